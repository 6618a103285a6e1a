//! Closure polynomials, twist regions, and hyperbolicity certificates.

use std::fmt;

use crate::bracket::jones;
use crate::constructions::{rational_knotoid_on, RationalCode};
use crate::diagram::{simplify, KnotoidDiagram, Surface};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::maps::{closure, closure_curves, ClosureKind};
use crate::shortcut::{height_upper_bound, shortest_shortcuts, Shortcut};

/// Shortcuts examined when searching for an alternating closure.
const SHORTCUT_SEARCH_LIMIT: usize = 4096;
/// Largest diagram matched against the rational generator.
const RATIONAL_MATCH_MAX_CROSSINGS: usize = 14;

pub fn closure_jones(d: &KnotoidDiagram, kind: ClosureKind) -> Result<LaurentPoly> {
    jones(&closure(d, kind))
}

/// Crossings joined by bigon faces form one twist region.
pub fn twist_regions(d: &KnotoidDiagram) -> Result<Vec<Vec<usize>>> {
    if !d.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = d.crossing_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let head = d.head_dart();
    for face in d.faces() {
        if face.len() != 2 || face.iter().any(|&x| x == 0 || x == head) {
            continue;
        }
        // each dart of a bigon is one side of an edge between two crossings
        let e = face[0] / 2;
        let (a, b) = (d.walk()[e - 1].crossing, d.walk()[e].crossing);
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        let r = root(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    Ok(out)
}

pub fn twist_region_count(d: &KnotoidDiagram) -> Result<usize> {
    Ok(twist_regions(d)?.len())
}

fn cyclically_alternating(levels: &[bool]) -> bool {
    let n = levels.len();
    n % 2 == 0 && (0..n).all(|i| levels[i] != levels[(i + 1) % n])
}

/// A shortest shortcut meeting the diagram once, with the closure kind that
/// makes the closed diagram alternating.
pub fn is_closure_alternating_height1(d: &KnotoidDiagram) -> Option<(Shortcut, ClosureKind)> {
    if height_upper_bound(d) != 1 {
        return None;
    }
    for sc in shortest_shortcuts(d, SHORTCUT_SEARCH_LIMIT) {
        for kind in [ClosureKind::Under, ClosureKind::Over] {
            let c = closure_curves(d, &sc, kind);
            let levels: Vec<bool> = c.strands[0].visits.iter().map(|v| v.over).collect();
            if cyclically_alternating(&levels) {
                return Some((sc, kind));
            }
        }
    }
    None
}

/// The rational code, if any, whose generator output is isomorphic to `d`.
pub fn match_rational(d: &KnotoidDiagram) -> Option<RationalCode> {
    let n = d.crossing_count();
    if n == 0 || n > RATIONAL_MATCH_MAX_CROSSINGS || d.surface() != Surface::Sphere {
        return None;
    }
    // compositions of n, in lexicographic order of the cut mask
    for mask in 0u32..(1 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1i64;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        for sign in [1, -1] {
            let code = RationalCode(parts.iter().map(|a| sign * a).collect());
            for reflect in [false, true] {
                if let Ok(r) = rational_knotoid_on(&code, Surface::Sphere, reflect) {
                    if r.is_isomorphic(d) || r.reverse().is_isomorphic(d) {
                        return Some(code);
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonHyperbolicKnotType,
    NonHyperbolicNotKnotFree,
    HyperbolicByHeight1Alternating,
    HyperbolicRational,
    Unknown,
}

impl Verdict {
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Verdict::HyperbolicByHeight1Alternating | Verdict::HyperbolicRational)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// a shortcut avoiding the diagram
    CrossinglessShortcut,
    /// edges of the simplified diagram met by a circle with crossings on
    /// its endpoint-free side
    Cut(usize, usize),
    AlternatingClosure(Shortcut, ClosureKind),
    Rational(RationalCode),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicityCertificate {
    pub verdict: Verdict,
    pub witness: Witness,
    /// the diagram the witness refers to, after greedy simplification
    pub diagram: KnotoidDiagram,
}

impl fmt::Display for HyperbolicityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        match &self.witness {
            Witness::CrossinglessShortcut => write!(f, " (crossingless shortcut)"),
            Witness::Cut(a, b) => write!(f, " (cut edges {a},{b})"),
            Witness::AlternatingClosure(sc, k) => {
                write!(f, " ({k}closure across edge {})", sc.steps[0].edge)
            }
            Witness::Rational(c) => write!(f, " (rational {c})"),
            Witness::None => Ok(()),
        }
    }
}

/// Classify from one diagram. Spherical input is simplified greedily first;
/// diagrams that stay unreduced get `Unknown`.
pub fn hyperbolicity_certificate(d: &KnotoidDiagram) -> Result<HyperbolicityCertificate> {
    if d.surface() != Surface::Sphere {
        return Err(Error::InvalidArgument("certificates are for spherical diagrams".into()));
    }
    let s = simplify(d);
    let cert = |verdict, witness| Ok(HyperbolicityCertificate { verdict, witness, diagram: s.clone() });
    if height_upper_bound(&s) == 0 {
        return cert(Verdict::NonHyperbolicKnotType, Witness::CrossinglessShortcut);
    }
    if !s.is_reduced() {
        return cert(Verdict::Unknown, Witness::None);
    }
    if let Some((a, b)) = s.knotted_cut()? {
        return cert(Verdict::NonHyperbolicNotKnotFree, Witness::Cut(a, b));
    }
    if let Some((sc, kind)) = is_closure_alternating_height1(&s) {
        // differing closures rule out height 0
        if closure_jones(&s, ClosureKind::Under)? != closure_jones(&s, ClosureKind::Over)? {
            return cert(Verdict::HyperbolicByHeight1Alternating, Witness::AlternatingClosure(sc, kind));
        }
    }
    if let Some(code) = match_rational(&s) {
        return cert(Verdict::HyperbolicRational, Witness::Rational(code));
    }
    cert(Verdict::Unknown, Witness::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket_skein;
    use crate::constructions::{compose_with_knot, integer_knotoid, rational_knotoid, trefoil_pd};

    fn two_one() -> KnotoidDiagram {
        KnotoidDiagram::parse("sphere; C1-o C2-u C1-u C2-o").unwrap()
    }

    // crossings minus bigons, valid when no bigons close up into a cycle
    fn regions_oracle(d: &KnotoidDiagram) -> usize {
        let head = d.head_dart();
        let bigons = d.faces().iter().filter(|f| f.len() == 2 && !f.contains(&0) && !f.contains(&head)).count();
        d.crossing_count() - bigons
    }

    #[test]
    fn closures_of_two_one() {
        let d = two_one();
        assert_eq!(closure_jones(&d, ClosureKind::Over).unwrap(), LaurentPoly::one());
        let under = closure(&d, ClosureKind::Under);
        let skein = bracket_skein(&under).times_neg_a3_pow(-(under.writhe() as i32));
        assert_eq!(closure_jones(&d, ClosureKind::Under).unwrap(), skein);
        let t = jones(&trefoil_pd()).unwrap();
        assert!(skein == t || skein == t.mirror());
    }

    #[test]
    fn twist_regions_of_generators() {
        assert_eq!(twist_region_count(&two_one()).unwrap(), 1);
        for n in [2, 4, 6, 8] {
            assert_eq!(twist_region_count(&integer_knotoid(n).unwrap()).unwrap(), 1);
        }
        for code in [vec![2, 3, 2], vec![2, 2], vec![2, 1, 2], vec![3, 1, 3], vec![2, 2, 2, 2]] {
            let c = RationalCode(code);
            if let Ok(d) = rational_knotoid(&c) {
                let m = c.0.len();
                assert_eq!(twist_region_count(&d).unwrap(), m, "{c}");
                assert_eq!(regions_oracle(&d), m, "{c}");
            }
        }
    }

    #[test]
    fn twist_regions_need_reduced() {
        let kink = KnotoidDiagram::parse("sphere; C1+o C1+u").unwrap();
        assert_eq!(twist_region_count(&kink), Err(Error::NotReduced));
    }

    #[test]
    fn alternating_closures() {
        assert!(is_closure_alternating_height1(&two_one()).is_some());
        assert!(is_closure_alternating_height1(&KnotoidDiagram::trivial(Surface::Sphere)).is_none());
        let d = rational_knotoid(&RationalCode(vec![2, 2])).unwrap();
        assert!(is_closure_alternating_height1(&d).is_some());
        for n in 2..=10 {
            if let Ok(d) = integer_knotoid(n) {
                assert!(is_closure_alternating_height1(&d).is_some(), "n = {n}");
            }
        }
    }

    #[test]
    fn certificates() {
        let v = |d: &KnotoidDiagram| hyperbolicity_certificate(d).unwrap().verdict;
        assert_eq!(v(&two_one()), Verdict::HyperbolicByHeight1Alternating);
        assert_eq!(v(&KnotoidDiagram::trivial(Surface::Sphere)), Verdict::NonHyperbolicKnotType);
        let k = compose_with_knot(&two_one(), &trefoil_pd()).unwrap();
        assert_eq!(v(&k), Verdict::NonHyperbolicNotKnotFree);
        assert!(v(&rational_knotoid(&RationalCode(vec![2, 2])).unwrap()).is_hyperbolic());
    }

    #[test]
    fn rational_match() {
        let d = rational_knotoid(&RationalCode(vec![2, 3, 2])).unwrap();
        assert_eq!(match_rational(&d), Some(RationalCode(vec![2, 3, 2])));
        assert_eq!(match_rational(&d.mirror()), Some(RationalCode(vec![-2, -3, -2])));
        assert_eq!(match_rational(&KnotoidDiagram::trivial(Surface::Sphere)), None);
    }
}
