//! The knot-and-belts link of a spherical knotoid.
//!
//! The knotoid is closed by an overpass running back along a shortcut. A thin
//! rectangle `belt2` surrounds that overpass in the projection, passing under
//! every other strand on one long side and over it on the other, while
//! staying below the overpass. A small circle `belt1` links both the overpass
//! and `belt2` near the tail. The complement of the two belts is a thickened
//! torus, and the knot sits in it as the image of the knotoid.
//!
//! Coordinates used in the comments: the shortcut runs along `+x` from the
//! tail (`x = 0`) to the head (`x = 1`), and `+y` is its left.

use crate::curves::{CurveDiagram, Strand, Visit};
use crate::diagram::KnotoidDiagram;
use crate::shortcut::Shortcut;

pub(crate) const KNOT: usize = 0;
pub(crate) const BELT1: usize = 1;
pub(crate) const BELT2: usize = 2;

pub(crate) struct BeltLink {
    /// strands: knot, belt1, belt2
    pub curves: CurveDiagram,
    /// knot-strand edge holding the start, and the end, of every knotoid edge
    pub first_edge: Vec<usize>,
    pub last_edge: Vec<usize>,
    /// belt1 edges from which an arc may rise above everything without
    /// threading the closing tube, and belt2 edges from which one may sink
    /// below everything; local edge indices, edge `p` ending at visit `p`
    pub rising: Vec<usize>,
    pub sinking: Vec<usize>,
}

impl BeltLink {
    /// Dart of the link diagram on the same side of the same edge as a dart
    /// of the knotoid.
    pub fn knotoid_dart(&self, dart: usize) -> usize {
        let e = dart / 2;
        if dart % 2 == 0 {
            2 * self.first_edge[e]
        } else {
            2 * self.last_edge[e] + 1
        }
    }
}

pub(crate) fn belt_link(d: &KnotoidDiagram, sc: &Shortcut) -> BeltLink {
    let n = d.crossing_count();
    let h = sc.len();
    let (t, a, b) = (|k: usize| n + 3 * k, |k: usize| n + 3 * k + 1, |k: usize| n + 3 * k + 2);
    let base = n + 3 * h;
    let (r, l, p1, p2) = (base, base + 1, base + 2, base + 3);
    let q = |i: usize| base + 3 + i;
    let v = Visit::new;

    let mut signs = d.signs().to_vec();
    for s in &sc.steps {
        let rtl = s.right_to_left;
        let pm = |pos: bool| if pos { 1 } else { -1 };
        signs.extend([pm(!rtl), pm(rtl), pm(!rtl)]);
    }
    signs.extend([1, -1, 1, 1, 1, -1, -1, -1]);

    // knot: the walk with three crossings where it passes the corridor,
    // then the overpass from head to tail
    let mut knot = d.walk().to_vec();
    let mut order: Vec<usize> = (0..h).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(sc.steps[k].edge));
    for k in order {
        let trio = if sc.steps[k].right_to_left {
            [v(t(k), false), v(a(k), false), v(b(k), true)]
        } else {
            [v(b(k), true), v(a(k), false), v(t(k), false)]
        };
        let at = sc.steps[k].edge;
        knot.splice(at..at, trio);
    }
    let len_walk = knot.len();
    knot.push(v(r, true));
    knot.extend((0..h).rev().map(|k| v(a(k), true)));
    knot.extend([v(p1, false), v(p2, true), v(l, true)]);

    // belt2 counter-clockwise: top side towards the head, bottom side back
    let mut belt2 = vec![v(q(3), true), v(q(2), false)];
    belt2.extend((0..h).map(|k| v(t(k), true)));
    belt2.push(v(r, false));
    belt2.extend((0..h).rev().map(|k| v(b(k), false)));
    belt2.extend([v(q(1), false), v(q(4), false), v(l, false)]);

    // belt1: up through the corridor high above, down through it low
    let belt1 = vec![v(q(1), true), v(p1, true), v(q(2), true), v(q(3), false), v(p2, false), v(q(4), true)];

    let strands = vec![Strand::closed(knot), Strand::closed(belt1), Strand::closed(belt2)];
    let curves = CurveDiagram::new(strands, signs).expect("belt link is valid");

    // where each old visit went
    let l_walk = d.walk().len();
    let mut new_index = Vec::with_capacity(l_walk);
    for i in 0..l_walk {
        let before = sc.steps.iter().filter(|s| s.edge <= i).count();
        new_index.push(i + 3 * before);
    }
    let first_edge = (0..=l_walk).map(|e| if e == 0 { 0 } else { new_index[e - 1] + 1 }).collect();
    let last_edge = (0..=l_walk).map(|e| if e < l_walk { new_index[e] } else { len_walk }).collect();
    // belt1's low side between belt2's top and the overpass runs under the
    // tube; belt2 is below the surface from `r` round to `l`
    let rising = vec![0, 1, 2, 3, 5];
    let sinking = (3 + h..=5 + 2 * h).collect();
    BeltLink { curves, first_edge, last_edge, rising, sinking }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::LinkPD;
    use crate::shortcut::shortest_shortcut;

    fn linking(c: &CurveDiagram, s1: usize, s2: usize) -> i64 {
        // half the signed count of crossings between the two strands
        let pos = c.visit_positions();
        let mut sum = 0;
        for x in 0..c.crossing_count() {
            let (a, b) = (pos[x][0].0, pos[x][1].0);
            if (a, b) == (s1, s2) || (a, b) == (s2, s1) {
                sum += c.signs[x] as i64;
            }
        }
        sum / 2
    }

    #[test]
    fn planar_with_three_components() {
        for code in ["sphere; C1-o C2-u C1-u C2-o", "sphere; ", "sphere; C1+o C2+u C3+o C1+u C2+o C3+u"] {
            let d = KnotoidDiagram::parse(code).unwrap();
            let sc = shortest_shortcut(&d);
            let bl = belt_link(&d, &sc);
            assert_eq!(bl.curves.genus().unwrap(), 0, "{code}");
            let pd = LinkPD::from_curves(&bl.curves, &["knot", "belt1", "belt2"], &[]).unwrap();
            assert_eq!(pd.component_count(), 3);
            assert_eq!(linking(&bl.curves, KNOT, BELT1).abs(), 1);
            assert_eq!(linking(&bl.curves, BELT1, BELT2).abs(), 1);
            // each passage through the corridor threads belt2
            let signed: i64 = sc.steps.iter().map(|s| if s.right_to_left { -1 } else { 1 }).sum();
            assert_eq!(linking(&bl.curves, KNOT, BELT2), signed);
        }
    }

    #[test]
    fn dart_transfer_keeps_faces_apart() {
        let d = KnotoidDiagram::parse("sphere; C1-o C2-u C1-u C2-o").unwrap();
        let bl = belt_link(&d, &shortest_shortcut(&d));
        let m = bl.curves.to_map();
        let fi = m.face_index();
        // the two sides of an edge away from the corridor lie in different faces
        let sc = shortest_shortcut(&d);
        let free = (0..d.edge_count()).find(|e| sc.steps.iter().all(|s| s.edge != *e) && *e > 0).unwrap();
        assert_ne!(fi[bl.knotoid_dart(2 * free)], fi[bl.knotoid_dart(2 * free + 1)]);
    }
}
