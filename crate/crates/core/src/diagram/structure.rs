//! Nugatory crossings and two-point cuts.

use std::collections::BTreeSet;

use super::KnotoidDiagram;
use crate::curves::CurveDiagram;
use crate::error::{Error, Result};

impl KnotoidDiagram {
    /// Rotation (counter-clockwise darts) at every crossing.
    pub(crate) fn rotations(&self) -> Vec<[usize; 4]> {
        let c = self.curves();
        let offsets = c.edge_offsets();
        let pos = c.visit_positions();
        (0..self.crossing_count()).map(|x| c.rotation(x, &offsets, &pos)).collect()
    }

    /// Faces on both sides of every edge: `(right, left)`.
    pub(crate) fn edge_faces(&self, fi: &[usize]) -> Vec<(usize, usize)> {
        (0..self.edge_count()).map(|e| (fi[2 * e], fi[2 * e + 1])).collect()
    }

    /// Crossings through which a circle meets the diagram once. A crossing
    /// is a cut vertex exactly when two opposite corners lie in one face.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let fi = self.face_index();
        let ext = self.exterior_face();
        let pos = self.positions();
        let mut out = Vec::new();
        for (c, r) in self.rotations().iter().enumerate() {
            let shared = if fi[r[0]] == fi[r[2]] {
                fi[r[0]]
            } else if fi[r[1]] == fi[r[3]] {
                fi[r[1]]
            } else {
                continue;
            };
            let ok = match ext {
                None => true,
                Some(x) => {
                    // the loop side must avoid the point at infinity unless the
                    // circle can be routed around it through the exterior
                    let (p, q) = (pos[c][0].min(pos[c][1]), pos[c][0].max(pos[c][1]));
                    let mut inner = BTreeSet::new();
                    for e in p + 1..=q {
                        inner.insert(fi[2 * e]);
                        inner.insert(fi[2 * e + 1]);
                    }
                    x == shared || !inner.contains(&x)
                }
            };
            if ok {
                out.push(c);
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    /// A pair of edges `(e1, e2)` cut by a circle whose endpoint-free side
    /// carries crossings, if any.
    pub fn knotted_cut(&self) -> Result<Option<(usize, usize)>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let fi = self.face_index();
        let ef = self.edge_faces(&fi);
        let ext = self.exterior_face();
        let pos = self.positions();
        let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        for e1 in 0..self.edge_count() {
            for e2 in e1 + 2..self.edge_count() {
                if key(ef[e1]) != key(ef[e2]) {
                    continue;
                }
                // visits e1..e2 must be closed under crossing partners
                let closed = (e1..e2).all(|p| {
                    let c = self.walk[p].crossing;
                    pos[c].iter().all(|&q| (e1..e2).contains(&q))
                });
                if !closed {
                    continue;
                }
                let (f, g) = ef[e1];
                let inside_ok = match ext {
                    None => true,
                    Some(x) => {
                        let mut inner = BTreeSet::new();
                        for e in e1 + 1..e2 {
                            inner.insert(fi[2 * e]);
                            inner.insert(fi[2 * e + 1]);
                        }
                        x == f || x == g || !inner.contains(&x)
                    }
                };
                if inside_ok {
                    return Ok(Some((e1, e2)));
                }
            }
        }
        Ok(None)
    }

    /// Errors with [`Error::NotReduced`] on diagrams with nugatory crossings.
    pub fn is_weakly_knot_free(&self) -> Result<bool> {
        Ok(self.knotted_cut()?.is_none())
    }
}

/// Weak primality of a one-component closed diagram: every two-point circle
/// has a crossingless side.
pub fn is_weakly_prime(d: &CurveDiagram) -> Result<bool> {
    if d.strands.len() != 1 || !d.strands[0].closed {
        return Err(Error::InvalidArgument("expected a knot diagram".into()));
    }
    let m = d.to_map();
    if m.genus() != 0 {
        return Err(Error::Unsupported("diagram is not planar".into()));
    }
    let fi = m.face_index();
    let visits = &d.strands[0].visits;
    let n = visits.len();
    let key = |e: usize| (fi[2 * e].min(fi[2 * e + 1]), fi[2 * e].max(fi[2 * e + 1]));
    // edge e ends at visit e; the arc strictly between cut points on e1 < e2
    // carries visits e1..e2
    for e1 in 0..n {
        for e2 in e1 + 1..n {
            if key(e1) != key(e2) {
                continue;
            }
            let inner = e2 - e1;
            let outer = n - inner;
            if inner > 0 && outer > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Strand, Visit};

    #[test]
    fn kink_is_nugatory() {
        let d = KnotoidDiagram::parse("sphere; C1+o C1+u").unwrap();
        assert_eq!(d.nugatory_crossings(), vec![0]);
        assert!(!d.is_reduced());
        assert_eq!(d.is_weakly_knot_free(), Err(Error::NotReduced));
    }

    #[test]
    fn kink_around_everything_in_the_plane() {
        // exterior = the monogon: the loop side holds infinity, so the only
        // disk the circle bounds in the plane contains both endpoints
        let d = KnotoidDiagram::parse("plane; C1+o C1+u; exterior=1").unwrap();
        let f = d.exterior_face().unwrap();
        assert_eq!(d.faces()[f].len(), 1);
        assert!(d.is_reduced());
        let outer = KnotoidDiagram::parse("plane; C1+o C1+u; exterior=0").unwrap();
        assert!(!outer.is_reduced());
    }

    #[test]
    fn trefoil_is_weakly_prime() {
        let v = |c, o| Visit::new(c, o);
        let d = CurveDiagram::new(
            vec![Strand::closed(vec![v(0, true), v(1, false), v(2, true), v(0, false), v(1, true), v(2, false)])],
            vec![1, 1, 1],
        )
        .unwrap();
        assert!(is_weakly_prime(&d).unwrap());
    }

    #[test]
    fn granny_is_not_weakly_prime() {
        // two trefoils joined: T1 on visits 0..5, T2 on visits 6..11
        let v = |c, o| Visit::new(c, o);
        let mut w = vec![v(0, true), v(1, false), v(2, true), v(0, false), v(1, true), v(2, false)];
        w.extend([v(3, true), v(4, false), v(5, true), v(3, false), v(4, true), v(5, false)]);
        let d = CurveDiagram::new(vec![Strand::closed(w)], vec![1; 6]).unwrap();
        assert_eq!(d.genus().unwrap(), 0);
        assert!(!is_weakly_prime(&d).unwrap());
    }
}
