//! Knotoid diagrams on the sphere and the plane.
//!
//! A diagram is stored as its walk from tail to head: the sequence of
//! crossing visits, each marked over or under, plus one sign per crossing.
//! The rotation system, and hence the faces, follow from the signs (see
//! [`CurveDiagram::rotation`]). Edge `i` runs from visit `i-1` to visit `i`;
//! edge 0 starts at the tail and edge `L` ends at the head. Dart `2i` is the
//! start of edge `i`, dart `2i+1` its end, and the face of a dart is the one
//! on its right. So the face of `2i` lies right of edge `i` and the face of
//! `2i+1` lies to its left.
//!
//! Code grammar, one diagram per line:
//!
//! ```text
//! sphere; C1+o C2+u C1+u C2+o
//! plane; C1+o C1+u; exterior=1
//! sphere; C1-o C1-u; unoriented     # comment
//! ```
//!
//! Tokens are `C<id><sign><o|u>`. Crossing ids are relabelled by first
//! appearance. `exterior=f` names a face by its rank when faces are ordered
//! by smallest dart.

mod moves;
mod structure;

use std::fmt;
use std::str::FromStr;

use crate::cmap::CombMap;
use crate::curves::{CurveDiagram, DartLabel, Strand, Visit};
use crate::error::{Error, Result};

pub use moves::{random_move_walk, simplify, MoveKind, MoveSite, Side};
pub use structure::is_weakly_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    Sphere,
    Plane,
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Sphere => "sphere",
            Surface::Plane => "plane",
        })
    }
}

impl FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sphere" | "s2" => Ok(Surface::Sphere),
            "plane" | "r2" => Ok(Surface::Plane),
            other => Err(Error::syntax(format!("unknown surface `{other}`"))),
        }
    }
}

/// What sits at the vertex end of a dart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Tail,
    Head,
    Crossing { crossing: usize, over: bool, incoming: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotoidDiagram {
    walk: Vec<Visit>,
    signs: Vec<i8>,
    surface: Surface,
    /// smallest dart of the exterior face (plane only)
    exterior: Option<usize>,
    oriented: bool,
}

/// Relabel crossings by first appearance, dropping ids that no longer occur.
pub(crate) fn normalize_walk(walk: &[Visit], signs: &[i8]) -> Result<(Vec<Visit>, Vec<i8>)> {
    let max = walk.iter().map(|v| v.crossing + 1).max().unwrap_or(0);
    if max > signs.len() {
        return Err(Error::invalid(format!("crossing {} has no sign", max - 1)));
    }
    let mut map = vec![usize::MAX; max];
    let mut out_signs = Vec::new();
    for v in walk {
        if map[v.crossing] == usize::MAX {
            map[v.crossing] = out_signs.len();
            out_signs.push(signs[v.crossing]);
        }
    }
    let out = walk.iter().map(|v| Visit::new(map[v.crossing], v.over)).collect();
    Ok((out, out_signs))
}

impl KnotoidDiagram {
    /// Validates and normalizes. `exterior` is any dart of the exterior face
    /// and must be given exactly when `surface` is the plane.
    pub fn new(walk: Vec<Visit>, signs: Vec<i8>, surface: Surface, exterior: Option<usize>) -> Result<Self> {
        let (walk, signs) = normalize_walk(&walk, &signs)?;
        let curves = CurveDiagram::new(vec![Strand::open(walk.clone())], signs.clone())?;
        let map = curves.to_map();
        if !map.is_connected() {
            return Err(Error::invalid("underlying graph is not connected"));
        }
        if map.euler_characteristic() != 2 {
            return Err(Error::invalid(format!(
                "Euler characteristic {} != 2: the rotation system is not planar",
                map.euler_characteristic()
            )));
        }
        let exterior = match (surface, exterior) {
            (Surface::Sphere, None) => None,
            (Surface::Sphere, Some(_)) => return Err(Error::invalid("spherical diagrams have no exterior face")),
            (Surface::Plane, None) => return Err(Error::invalid("planar diagram needs an exterior face")),
            (Surface::Plane, Some(d)) => {
                if d >= map.darts() {
                    return Err(Error::invalid(format!("exterior dart {d} out of range")));
                }
                let idx = map.face_index();
                Some((0..map.darts()).find(|&x| idx[x] == idx[d]).unwrap())
            }
        };
        Ok(Self { walk, signs, surface, exterior, oriented: true })
    }

    pub fn trivial(surface: Surface) -> Self {
        let ext = (surface == Surface::Plane).then_some(0);
        Self::new(Vec::new(), Vec::new(), surface, ext).unwrap()
    }

    pub fn walk(&self) -> &[Visit] {
        &self.walk
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn with_orientation(mut self, oriented: bool) -> Self {
        self.oriented = oriented;
        self
    }

    /// Smallest dart of the exterior face.
    pub fn exterior_dart(&self) -> Option<usize> {
        self.exterior
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.walk.len() + 1
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edge_count()
    }

    pub fn head_dart(&self) -> usize {
        2 * self.walk.len() + 1
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Walk positions `[under, over]` of every crossing.
    pub fn positions(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[0; 2]; self.signs.len()];
        for (p, v) in self.walk.iter().enumerate() {
            out[v.crossing][usize::from(v.over)] = p;
        }
        out
    }

    pub fn curves(&self) -> CurveDiagram {
        CurveDiagram { strands: vec![Strand::open(self.walk.clone())], signs: self.signs.clone() }
    }

    pub fn map(&self) -> CombMap<DartLabel> {
        self.curves().to_map()
    }

    /// Map whose labels only record what sits at each dart, so that
    /// isomorphisms ignore crossing ids and positions.
    pub fn port_map(&self) -> CombMap<(u8, bool, bool)> {
        let m = self.map();
        let mut alpha = Vec::with_capacity(m.darts());
        let mut sigma = Vec::with_capacity(m.darts());
        let mut labels = Vec::with_capacity(m.darts());
        for d in 0..m.darts() {
            alpha.push(m.alpha(d));
            sigma.push(m.sigma(d));
            labels.push(match self.port(d) {
                Port::Tail => (0, false, false),
                Port::Head => (1, false, false),
                Port::Crossing { over, incoming, .. } => (2, over, incoming),
            });
        }
        CombMap::new(alpha, sigma, labels)
    }

    pub fn port(&self, dart: usize) -> Port {
        let l = self.walk.len();
        if dart == 0 {
            Port::Tail
        } else if dart == 2 * l + 1 {
            Port::Head
        } else if dart % 2 == 1 {
            let v = self.walk[(dart - 1) / 2];
            Port::Crossing { crossing: v.crossing, over: v.over, incoming: true }
        } else {
            let v = self.walk[dart / 2 - 1];
            Port::Crossing { crossing: v.crossing, over: v.over, incoming: false }
        }
    }

    /// Walk position of the crossing at the vertex end of a dart.
    pub fn dart_position(&self, dart: usize) -> Option<usize> {
        match self.port(dart) {
            Port::Tail | Port::Head => None,
            Port::Crossing { incoming: true, .. } => Some((dart - 1) / 2),
            Port::Crossing { incoming: false, .. } => Some(dart / 2 - 1),
        }
    }

    /// Faces as dart cycles, ordered by smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.map().faces()
    }

    /// Faces as cyclic sequences of ports.
    pub fn face_ports(&self) -> Vec<Vec<Port>> {
        self.faces().iter().map(|f| f.iter().map(|&d| self.port(d)).collect()).collect()
    }

    pub fn face_index(&self) -> Vec<usize> {
        self.map().face_index()
    }

    pub fn exterior_face(&self) -> Option<usize> {
        self.exterior.map(|d| self.face_index()[d])
    }

    pub fn tail_face(&self) -> usize {
        self.face_index()[0]
    }

    pub fn head_face(&self) -> usize {
        self.face_index()[self.head_dart()]
    }

    /// Same knotoid with the same exterior, arc traversed the other way.
    pub fn reverse(&self) -> Self {
        let l = self.walk.len();
        let walk: Vec<Visit> = self.walk.iter().rev().copied().collect();
        let ext = self.exterior.map(|d| 2 * (l - d / 2) + (1 - d % 2));
        let mut out = Self::new(walk, self.signs.clone(), self.surface, ext).expect("reversal keeps validity");
        out.oriented = self.oriented;
        out
    }

    /// Over and under exchanged at every crossing; the projection is unchanged.
    pub fn mirror(&self) -> Self {
        let walk = self.walk.iter().map(|v| Visit::new(v.crossing, !v.over)).collect();
        let signs = self.signs.iter().map(|s| -s).collect();
        let mut out = Self::new(walk, signs, self.surface, self.exterior).expect("mirror keeps validity");
        out.oriented = self.oriented;
        out
    }

    /// Reflection of the projection surface; over/under data is kept.
    pub fn reflect(&self) -> Self {
        let signs = self.signs.iter().map(|s| -s).collect();
        // a face now lies on the other side of each of its edges
        let ext = self.exterior.map(|x| x ^ 1);
        let mut out = Self::new(self.walk.clone(), signs, self.surface, ext).expect("reflection keeps validity");
        out.oriented = self.oriented;
        out
    }

    /// Same diagram viewed on the other surface. Going to the plane needs an
    /// exterior dart.
    pub fn on_surface(&self, surface: Surface, exterior: Option<usize>) -> Result<Self> {
        let mut out = Self::new(self.walk.clone(), self.signs.clone(), surface, exterior)?;
        out.oriented = self.oriented;
        Ok(out)
    }

    /// Orientation-preserving isomorphism of the diagram maps, respecting
    /// over/under, endpoints and the exterior face. Crossing ids and walk
    /// positions are ignored; this is the oracle for canonical codes.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.surface != other.surface {
            return false;
        }
        let candidates =
            if self.oriented && other.oriented { vec![other.clone()] } else { vec![other.clone(), other.reverse()] };
        let a = self.port_map();
        candidates.iter().any(|o| {
            let b = o.port_map();
            match a.isomorphism(&b) {
                None => false,
                Some(iso) => match (self.exterior, o.exterior) {
                    (Some(x), Some(y)) => {
                        let fi = b.face_index();
                        fi[iso[x]] == fi[y]
                    }
                    _ => true,
                },
            }
        })
    }

    fn code_body(&self) -> String {
        let mut s = format!("{};", self.surface);
        for v in &self.walk {
            let sign = if self.signs[v.crossing] > 0 { '+' } else { '-' };
            let ou = if v.over { 'o' } else { 'u' };
            s.push_str(&format!(" C{}{}{}", v.crossing + 1, sign, ou));
        }
        if let Some(f) = self.exterior_face() {
            s.push_str(&format!("; exterior={f}"));
        }
        s
    }

    /// Canonical code. Unoriented diagrams take the smaller code of the two
    /// traversal directions.
    pub fn to_code(&self) -> String {
        if self.oriented {
            self.code_body()
        } else {
            let a = self.code_body();
            let b = self.reverse().code_body();
            format!("{}; unoriented", a.min(b))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for KnotoidDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}

fn parse_walk(s: &str) -> Result<(Vec<Visit>, Vec<i8>)> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut ids: Vec<usize> = Vec::new();
    let mut raw = Vec::new();
    while i < chars.len() {
        if chars[i] != 'C' && chars[i] != 'c' {
            return Err(Error::syntax(format!("expected `C` at `{}`", chars[i..].iter().collect::<String>())));
        }
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let id: usize = chars[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::syntax("crossing token needs a numeric id"))?;
        let sign = match chars.get(i) {
            Some('+') => 1i8,
            Some('-') => -1,
            _ => return Err(Error::syntax(format!("crossing C{id} needs a sign"))),
        };
        let over = match chars.get(i + 1) {
            Some('o') | Some('O') => true,
            Some('u') | Some('U') => false,
            _ => return Err(Error::syntax(format!("crossing C{id} needs o or u"))),
        };
        i += 2;
        raw.push((id, sign, over));
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    let mut signs = vec![0i8; ids.len()];
    let mut walk = Vec::with_capacity(raw.len());
    for (id, sign, over) in raw {
        let k = ids.iter().position(|&x| x == id).unwrap();
        if signs[k] != 0 && signs[k] != sign {
            return Err(Error::syntax(format!("crossing C{id} has inconsistent signs")));
        }
        signs[k] = sign;
        walk.push(Visit::new(k, over));
    }
    Ok((walk, signs))
}

impl FromStr for KnotoidDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let line = text.split('#').next().unwrap_or("").trim();
        let mut clauses = line.split(';');
        let surface: Surface = clauses.next().unwrap_or("").parse()?;
        let (walk, signs) = parse_walk(clauses.next().unwrap_or(""))?;
        let mut exterior_face = None;
        let mut oriented = true;
        for c in clauses {
            let c: String = c.chars().filter(|ch| !ch.is_whitespace()).collect();
            if c.is_empty() {
                continue;
            }
            if let Some(f) = c.strip_prefix("exterior=") {
                exterior_face =
                    Some(f.parse::<usize>().map_err(|_| Error::syntax(format!("bad exterior face `{f}`")))?);
            } else if c == "unoriented" {
                oriented = false;
            } else {
                return Err(Error::syntax(format!("unknown clause `{c}`")));
            }
        }
        // resolve the face rank against the map before validation proper
        let ext_dart = match (surface, exterior_face) {
            (Surface::Plane, None) => return Err(Error::syntax("plane code needs `exterior=f`")),
            (Surface::Sphere, Some(_)) => return Err(Error::syntax("sphere code takes no exterior clause")),
            (Surface::Sphere, None) => None,
            (Surface::Plane, Some(f)) => {
                let sphere = KnotoidDiagram::new(walk.clone(), signs.clone(), Surface::Sphere, None)?;
                let faces = sphere.faces();
                let face = faces
                    .get(f)
                    .ok_or_else(|| Error::invalid(format!("exterior face {f} out of range ({} faces)", faces.len())))?;
                Some(face[0])
            }
        };
        let mut d = KnotoidDiagram::new(walk, signs, surface, ext_dart)?;
        d.oriented = oriented;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const K2_1: &str = "sphere; C1-o C2-u C1-u C2-o";

    #[test]
    fn trivial_has_one_face() {
        let d = KnotoidDiagram::trivial(Surface::Sphere);
        assert_eq!(d.faces().len(), 1);
        assert_eq!(d.to_code(), "sphere;");
        assert_eq!(KnotoidDiagram::parse("sphere;").unwrap(), d);
    }

    #[test]
    fn euler_counts() {
        let d = KnotoidDiagram::parse(K2_1).unwrap();
        let m = d.map();
        assert_eq!(m.vertices().len(), 4);
        assert_eq!(m.darts() / 2, 5);
        assert_eq!(m.faces().len(), 3);
    }

    #[test]
    fn code_round_trip() {
        for code in [K2_1, "plane; C1+o C1+u; exterior=1", "sphere; C1+o C2+u C3+o C1+u C2+o C3+u"] {
            let d = KnotoidDiagram::parse(code).unwrap();
            assert_eq!(d.to_code(), code);
        }
    }

    #[test]
    fn ids_are_relabelled() {
        let a = KnotoidDiagram::parse("sphere; C7-o C3-u C7-u C3-o").unwrap();
        assert_eq!(a.to_code(), K2_1);
    }

    #[test]
    fn rejects_nonplanar_signs() {
        let r = KnotoidDiagram::parse("sphere; C1+o C2-u C1+u C2-o");
        assert!(matches!(r, Err(Error::Invalid(m)) if m.contains("Euler")));
        assert!(KnotoidDiagram::parse("sphere; C1+o C2+o").is_err());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(KnotoidDiagram::parse("torus; C1+o C1+u"), Err(Error::Syntax(_))));
        assert!(matches!(KnotoidDiagram::parse("sphere; C1o C1+u"), Err(Error::Syntax(_))));
        assert!(matches!(KnotoidDiagram::parse("sphere; C1+o C1-u"), Err(Error::Syntax(_))));
        assert!(matches!(KnotoidDiagram::parse("plane; C1+o C1+u"), Err(Error::Syntax(_))));
        assert!(KnotoidDiagram::parse("plane; C1+o C1+u; exterior=9").is_err());
    }

    #[test]
    fn reverse_twice_is_identity() {
        let d = KnotoidDiagram::parse("plane; C1+o C2+u C1+u C2+o; exterior=2").unwrap();
        assert_eq!(d.reverse().reverse(), d);
        assert_eq!(d.reverse().faces().len(), d.faces().len());
    }

    #[test]
    fn reverse_keeps_exterior_region() {
        // on 1_1 the exterior is the monogon; reversing must keep it there
        let d = KnotoidDiagram::parse("plane; C1+o C1+u; exterior=1").unwrap();
        let r = d.reverse();
        let f = r.exterior_face().unwrap();
        assert_eq!(r.faces()[f].len(), 1);
    }

    #[test]
    fn relabelled_diagram_is_isomorphic() {
        let a = KnotoidDiagram::parse(K2_1).unwrap();
        let b = KnotoidDiagram::parse("sphere; C2-o C1-u C2-u C1-o").unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&a.mirror()));
    }

    #[test]
    fn unoriented_code_is_orientation_free() {
        let d = KnotoidDiagram::parse("sphere; C1+o C2+u C3+o C1+u C2+o C3+u C4+o C4+u").unwrap();
        let u = d.clone().with_orientation(false);
        assert_eq!(u.to_code(), u.reverse().to_code());
        assert!(u.to_code().ends_with("unoriented"));
        assert_eq!(KnotoidDiagram::parse(&u.to_code()).unwrap().to_code(), u.to_code());
    }
}
