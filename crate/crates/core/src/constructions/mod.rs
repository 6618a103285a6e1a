//! Integer and rational knotoids, products, and composition with knots.

mod tangle;

use std::fmt;
use std::str::FromStr;

pub use tangle::{PortGraph, Tangle};

use crate::curves::Visit;
use crate::diagram::{KnotoidDiagram, Surface};
use crate::error::{Error, Result};
use crate::pd::LinkPD;

/// Twist-region multiplicities `[a1, ..., am]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCode(pub Vec<i64>);

impl fmt::Display for RationalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for RationalCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::syntax(format!("rational code `{s}` must be bracketed")))?;
        let v = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::syntax(format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if v.is_empty() || v.contains(&0) {
            return Err(Error::syntax("rational code entries must be nonzero"));
        }
        Ok(RationalCode(v))
    }
}

/// A leading entry of 1 merges with the next twist region, so such codes
/// give fewer than `code.len()` regions.
pub fn rational_knotoid(code: &RationalCode) -> Result<KnotoidDiagram> {
    rational_knotoid_on(code, Surface::Sphere, false)
}

/// Rational knotoid on either surface. `reflect` applies the reflection in
/// the NW-SE diagonal, which fixes the endpoints and the joining strand.
pub fn rational_knotoid_on(code: &RationalCode, surface: Surface, reflect: bool) -> Result<KnotoidDiagram> {
    if code.0.is_empty() || code.0.contains(&0) {
        return Err(Error::InvalidArgument(format!("bad rational code {code}")));
    }
    let d = Tangle::rational(&code.0).knotoid(surface, &code.to_string())?;
    Ok(if reflect { d.reflect() } else { d })
}

/// One twist region of `|n|` crossings; `n` and `-n` give mirror images.
/// Odd `n` closes to two components and is rejected.
pub fn integer_knotoid(n: i64) -> Result<KnotoidDiagram> {
    if n == 0 {
        return Err(Error::InvalidArgument("integer knotoid needs n != 0".into()));
    }
    rational_knotoid(&RationalCode(vec![n]))
}

/// Number of components, other than the two belts, of the thickened-torus
/// image of the integer tangle `n`: NE is joined to SW and NW to SE.
pub fn integer_gluing_components(n: i64) -> usize {
    let t = Tangle::rational(&[n]);
    let mut g = t.graph.clone();
    let (a, b) = (g.link[t.ne], g.link[t.sw]);
    let (c, d) = (g.link[t.nw], g.link[t.se]);
    let joins = [(a, b, t.ne, t.sw), (c, d, t.nw, t.se)];
    let mut extra_loops = 0;
    for (p, q, s, u) in joins {
        if p == u && q == s {
            // a crossingless arc closed on itself
            extra_loops += 1;
            continue;
        }
        g.link[p] = q;
        g.link[q] = p;
    }
    let ports = 4 * g.crossings;
    let mut seen = vec![false; ports];
    let mut count = 0;
    for start in 0..ports {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            let q = g.link[p];
            seen[q] = true;
            p = 4 * (q / 4) + (q % 4 + 2) % 4;
        }
    }
    count + extra_loops
}

/// Head of `k1` joined to the tail of `k2`. On the plane the tail of `k2`
/// must lie in its exterior region; `k2` is then shrunk into the region of
/// `k1` holding the head.
pub fn product(k1: &KnotoidDiagram, k2: &KnotoidDiagram) -> Result<KnotoidDiagram> {
    if k1.surface() != k2.surface() {
        return Err(Error::SurfaceMismatch);
    }
    if !k1.is_oriented() || !k2.is_oriented() {
        return Err(Error::NotOriented);
    }
    if k2.surface() == Surface::Plane && k2.exterior_face() != Some(k2.tail_face()) {
        return Err(Error::InvalidArgument("tail of the second factor is not in its exterior region".into()));
    }
    let n1 = k1.crossing_count();
    let mut walk = k1.walk().to_vec();
    walk.extend(k2.walk().iter().map(|v| Visit::new(v.crossing + n1, v.over)));
    let mut signs = k1.signs().to_vec();
    signs.extend_from_slice(k2.signs());
    KnotoidDiagram::new(walk, signs, k1.surface(), k1.exterior_dart())
}

/// Splice the knot `knot` into edge `edge` of `k`, cutting the knot open on
/// the edge that ends at its first visit.
pub fn compose_with_knot_at(k: &KnotoidDiagram, knot: &LinkPD, edge: usize) -> Result<KnotoidDiagram> {
    if knot.component_count() != 1 {
        return Err(Error::InvalidArgument(format!("expected a knot, got {} components", knot.component_count())));
    }
    if !k.is_oriented() {
        return Err(Error::NotOriented);
    }
    if edge >= k.edge_count() {
        return Err(Error::InvalidArgument(format!("edge {edge} out of range")));
    }
    let curves = knot.to_curves()?;
    let n = k.crossing_count();
    let mut walk = k.walk()[..edge].to_vec();
    walk.extend(curves.strands[0].visits.iter().map(|v| Visit::new(v.crossing + n, v.over)));
    walk.extend_from_slice(&k.walk()[edge..]);
    let mut signs = k.signs().to_vec();
    signs.extend_from_slice(&curves.signs);
    // darts before the splice keep their numbers
    let ext = k.exterior_dart().map(|x| if x <= 2 * edge { x } else { x + 2 * curves.strands[0].visits.len() });
    KnotoidDiagram::new(walk, signs, k.surface(), ext)
}

/// Composition along the tail edge.
pub fn compose_with_knot(k: &KnotoidDiagram, knot: &LinkPD) -> Result<KnotoidDiagram> {
    compose_with_knot_at(k, knot, 0)
}

/// All-positive trefoil, for tests and examples.
pub fn trefoil_pd() -> LinkPD {
    use crate::curves::{CurveDiagram, Strand};
    let v = |c, o| Visit::new(c, o);
    let d = CurveDiagram::new(
        vec![Strand::closed(vec![v(0, true), v(1, false), v(2, true), v(0, false), v(1, true), v(2, false)])],
        vec![1, 1, 1],
    )
    .expect("trefoil");
    LinkPD::from_curves(&d, &["knot"], &[]).expect("closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::jones;
    use crate::maps::{closure, ClosureKind};

    // the joining arc is the one place where the walk may repeat a level
    fn alternating(d: &KnotoidDiagram) -> bool {
        d.walk().windows(2).filter(|w| w[0].over == w[1].over).count() <= 1
    }

    #[test]
    fn integer_two_is_two_one() {
        let d = integer_knotoid(2).unwrap();
        let two_one = KnotoidDiagram::parse("sphere; C1-o C2-u C1-u C2-o").unwrap();
        assert!(d.is_isomorphic(&two_one) || d.is_isomorphic(&two_one.reverse()), "{d}");
    }

    #[test]
    fn odd_integer_closes_to_two_components() {
        for n in [1, 3, -5] {
            assert!(matches!(integer_knotoid(n), Err(Error::TwoComponents(_))));
        }
    }

    #[test]
    fn parity_of_integer_torus_closure() {
        for n in 1..=8 {
            assert_eq!(integer_gluing_components(n), if n % 2 == 0 { 1 } else { 2 }, "n = {n}");
        }
    }

    #[test]
    fn integer_mirror() {
        for n in [2, 4, 6] {
            assert_eq!(integer_knotoid(-n).unwrap(), integer_knotoid(n).unwrap().mirror());
        }
    }

    #[test]
    fn rational_outputs_alternate() {
        for code in [vec![2], vec![2, 2], vec![2, 3, 2], vec![3, 1], vec![1, 2, 1, 2], vec![4, 1, 1]] {
            let c = RationalCode(code);
            match rational_knotoid(&c) {
                Ok(d) => {
                    assert!(alternating(&d), "{c} gives {d}");
                    assert!(d.is_reduced(), "{c}");
                }
                Err(Error::TwoComponents(_)) => {}
                Err(e) => panic!("{c}: {e}"),
            }
        }
    }

    #[test]
    fn code_text() {
        let c: RationalCode = "[2, 3,2]".parse().unwrap();
        assert_eq!(c.to_string(), "[2,3,2]");
        assert!("[2,0]".parse::<RationalCode>().is_err());
        assert!("2,3".parse::<RationalCode>().is_err());
    }

    #[test]
    fn product_with_trivial() {
        let k = integer_knotoid(2).unwrap();
        let t = KnotoidDiagram::trivial(Surface::Sphere);
        assert_eq!(product(&t, &k).unwrap(), k);
        assert_eq!(product(&k, &t).unwrap(), k);
        assert_eq!(product(&k, &k).unwrap().crossing_count(), 4);
    }

    #[test]
    fn product_surface_mismatch() {
        let a = KnotoidDiagram::trivial(Surface::Sphere);
        let b = KnotoidDiagram::trivial(Surface::Plane);
        assert_eq!(product(&a, &b), Err(Error::SurfaceMismatch));
    }

    #[test]
    fn composition_multiplies_jones() {
        let k = integer_knotoid(2).unwrap();
        let kk = compose_with_knot(&k, &trefoil_pd()).unwrap();
        assert_eq!(kk.crossing_count(), 5);
        let lhs = jones(&closure(&kk, ClosureKind::Under)).unwrap();
        let rhs = &jones(&closure(&k, ClosureKind::Under)).unwrap() * &jones(&trefoil_pd()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(kk.is_weakly_knot_free(), Ok(false));
    }

    #[test]
    fn composition_with_unknot_is_identity() {
        let k = integer_knotoid(4).unwrap();
        let unknot: LinkPD = " ; comp=knot:1-1".parse().unwrap();
        assert_eq!(compose_with_knot(&k, &unknot).unwrap(), k);
    }
}
