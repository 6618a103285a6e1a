//! Shipped knotoid catalogs and their reference volumes.
//!
//! Catalog lines are `name<TAB>code<TAB>source`; reference lines are
//! `name<TAB>gluing[<TAB>doubling]` with `NH` for non-hyperbolic. Blank
//! lines and `#` comments are skipped.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::{KnotoidDiagram, Surface};
use crate::error::{Error, Result};

const SPHERE: &str = include_str!("../data/sphere.tsv");
const PLANE: &str = include_str!("../data/plane.tsv");
const SPHERE_VOLUMES: &str = include_str!("../data/sphere_volumes.tsv");
const PLANE_VOLUMES: &str = include_str!("../data/plane_volumes.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Figure,
    KnotType,
    Volume,
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "figure" => Ok(Source::Figure),
            "knot-type" => Ok(Source::KnotType),
            "volume" => Ok(Source::Volume),
            _ => Err(Error::syntax(format!("unknown catalog source `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub code: String,
    pub diagram: KnotoidDiagram,
    pub source: Source,
}

impl CatalogEntry {
    pub fn surface(&self) -> Surface {
        self.diagram.surface()
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim_end();
        (!l.trim().is_empty() && !l.trim_start().starts_with('#')).then(|| (i + 1, l.split('\t').collect()))
    })
}

/// Parses and validates a catalog; names must be unique.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, cols) in rows(text) {
        if cols.len() < 2 || cols.len() > 3 {
            return Err(Error::syntax(format!("catalog line {line}: expected name<TAB>code[<TAB>source]")));
        }
        let name = cols[0].trim().to_string();
        if !seen.insert(name.clone()) {
            return Err(Error::invalid(format!("catalog line {line}: duplicate name {name}")));
        }
        let code = cols[1].trim().to_string();
        let diagram = KnotoidDiagram::parse(&code).map_err(|e| Error::invalid(format!("catalog entry {name}: {e}")))?;
        let source = cols.get(2).map_or(Ok(Source::Volume), |s| s.trim().parse())?;
        out.push(CatalogEntry { name, code, diagram, source });
    }
    Ok(out)
}

pub fn sphere_catalog() -> Vec<CatalogEntry> {
    parse_catalog(SPHERE).expect("shipped catalog is valid")
}

pub fn plane_catalog() -> Vec<CatalogEntry> {
    parse_catalog(PLANE).expect("shipped catalog is valid")
}

pub fn catalog(surface: Surface) -> Vec<CatalogEntry> {
    match surface {
        Surface::Sphere => sphere_catalog(),
        Surface::Plane => plane_catalog(),
    }
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    sphere_catalog().into_iter().chain(plane_catalog()).find(|e| e.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum RefVolume {
    Volume(f64),
    NonHyperbolic,
}

impl RefVolume {
    /// Whether a computed value agrees: within `tol` of a volume, or absent
    /// for a non-hyperbolic entry.
    pub fn matches(self, computed: Option<f64>, tol: f64) -> bool {
        match (self, computed) {
            (RefVolume::Volume(v), Some(c)) => (v - c).abs() <= tol,
            (RefVolume::NonHyperbolic, None) => true,
            _ => false,
        }
    }
}

impl fmt::Display for RefVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefVolume::Volume(v) => write!(f, "{v:.5}"),
            RefVolume::NonHyperbolic => f.write_str("Non-hyperbolic"),
        }
    }
}

impl FromStr for RefVolume {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "NH" => Ok(RefVolume::NonHyperbolic),
            v => v.parse().map(RefVolume::Volume).map_err(|_| Error::syntax(format!("bad volume `{v}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub name: String,
    pub gluing: RefVolume,
    /// Planar rows only; spherical doubling volumes are twice the gluing ones.
    pub doubling: Option<RefVolume>,
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    rows(text)
        .map(|(line, cols)| {
            if cols.len() < 2 || cols.len() > 3 {
                return Err(Error::syntax(format!("reference line {line}: expected two or three columns")));
            }
            Ok(ReferenceRow {
                name: cols[0].trim().to_string(),
                gluing: cols[1].parse()?,
                doubling: cols.get(2).map(|c| c.parse()).transpose()?,
            })
        })
        .collect()
}

pub fn reference_volumes(surface: Surface) -> Vec<ReferenceRow> {
    let text = match surface {
        Surface::Sphere => SPHERE_VOLUMES,
        Surface::Plane => PLANE_VOLUMES,
    };
    parse_reference(text).expect("shipped reference table is valid")
}

/// Sort key putting `5_10` after `5_9`.
pub fn name_key(name: &str) -> (u64, u64, String) {
    let mut parts = name.splitn(2, '_');
    let a = parts.next().and_then(|p| p.parse().ok()).unwrap_or(u64::MAX);
    let b = parts.next().and_then(|p| p.parse().ok()).unwrap_or(u64::MAX);
    (a, b, name.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalogs_parse() {
        let s = sphere_catalog();
        assert_eq!(s.len(), 33);
        assert!(s.iter().all(|e| e.surface() == Surface::Sphere && e.crossing_count() <= 5));
        let p = plane_catalog();
        assert!(p.iter().all(|e| e.surface() == Surface::Plane));
        // crossing number is the first half of the name
        for e in s.iter().chain(&p) {
            assert_eq!(e.crossing_count() as u64, name_key(&e.name).0, "{}", e.name);
        }
    }

    #[test]
    fn knot_type_entries_have_height_zero() {
        for e in sphere_catalog() {
            let h = crate::shortcut::height_upper_bound(&e.diagram);
            assert_eq!(h == 0, e.source == Source::KnotType, "{}", e.name);
        }
    }

    #[test]
    fn every_catalog_name_has_a_reference() {
        for s in [Surface::Sphere, Surface::Plane] {
            let refs = reference_volumes(s);
            for e in catalog(s).iter().filter(|e| e.source != Source::Figure || s == Surface::Sphere) {
                assert!(refs.iter().any(|r| r.name == e.name), "{}", e.name);
            }
        }
    }

    #[test]
    fn malformed_catalogs() {
        assert!(parse_catalog("a\tsphere;\na\tsphere;").is_err());
        assert!(parse_catalog("a").is_err());
        assert!(parse_catalog("a\tsphere; C1+o").is_err());
        assert!(parse_catalog("a\tsphere;\tbogus").is_err());
        assert_eq!(parse_catalog("# c\n\nb\tsphere;\n").unwrap().len(), 1);
    }

    #[test]
    fn names_sort_numerically() {
        let mut v = vec!["5_10", "5_9", "2_1", "0_1"];
        v.sort_by_key(|n| name_key(n));
        assert_eq!(v, ["0_1", "2_1", "5_9", "5_10"]);
    }

    fn same_up_to_symmetry(a: &KnotoidDiagram, b: &KnotoidDiagram) -> bool {
        let a = a.clone().with_orientation(false);
        [b.clone(), b.mirror(), b.reflect(), b.mirror().reflect()]
            .iter()
            .any(|s| a.is_isomorphic(&s.clone().with_orientation(false)))
    }

    #[test]
    fn integer_entries() {
        use crate::constructions::integer_knotoid;
        for (name, n) in [("2_1", 2), ("4_6", 4)] {
            let e = lookup(name).unwrap();
            assert!(same_up_to_symmetry(&e.diagram, &integer_knotoid(n).unwrap()), "{name}");
        }
    }
}
