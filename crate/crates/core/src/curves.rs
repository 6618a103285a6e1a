//! Signed Gauss diagrams of several strands (open arcs or closed loops) and
//! their combinatorial maps.
//!
//! Every crossing is visited exactly twice, once on the over slot and once on
//! the under slot. For crossings between curves drawn on a surface the slots
//! are formal; only the rotation they induce matters.

use crate::cmap::CombMap;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

impl Visit {
    pub fn new(crossing: usize, over: bool) -> Self {
        Self { crossing, over }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub visits: Vec<Visit>,
    pub closed: bool,
}

impl Strand {
    pub fn open(visits: Vec<Visit>) -> Self {
        Self { visits, closed: false }
    }

    pub fn closed(visits: Vec<Visit>) -> Self {
        Self { visits, closed: true }
    }

    /// A closed strand without visits is a free loop and owns no edges.
    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.visits.len()
        } else {
            self.visits.len() + 1
        }
    }
}

/// Label carried by each dart of a [`CurveDiagram`] map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartLabel {
    pub strand: usize,
    pub edge: usize,
    /// true for the dart at the start of the edge
    pub start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveDiagram {
    pub strands: Vec<Strand>,
    /// +1 or -1 per crossing
    pub signs: Vec<i8>,
}

impl CurveDiagram {
    pub fn new(strands: Vec<Strand>, signs: Vec<i8>) -> Result<Self> {
        let d = Self { strands, signs };
        d.check()?;
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.signs.len();
        let mut over = vec![0usize; n];
        let mut under = vec![0usize; n];
        for s in &self.strands {
            for v in &s.visits {
                if v.crossing >= n {
                    return Err(Error::invalid(format!("crossing {} has no sign", v.crossing)));
                }
                if v.over {
                    over[v.crossing] += 1;
                } else {
                    under[v.crossing] += 1;
                }
            }
        }
        for c in 0..n {
            if over[c] != 1 || under[c] != 1 {
                return Err(Error::invalid(format!("crossing {c} must have exactly one over and one under visit")));
            }
            if self.signs[c] != 1 && self.signs[c] != -1 {
                return Err(Error::invalid(format!("crossing {c} sign must be +1 or -1")));
            }
        }
        Ok(())
    }

    /// Global index of the first edge of every strand.
    pub fn edge_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.strands.len());
        let mut acc = 0;
        for s in &self.strands {
            out.push(acc);
            acc += s.edge_count();
        }
        out
    }

    pub fn edge_total(&self) -> usize {
        self.strands.iter().map(Strand::edge_count).sum()
    }

    /// Incoming and outgoing dart of visit `p` on strand `s`.
    pub fn visit_darts(&self, offsets: &[usize], s: usize, p: usize) -> (usize, usize) {
        let st = &self.strands[s];
        let base = offsets[s];
        let m = st.visits.len();
        let e_in = base + p;
        let e_out = if st.closed { base + (p + 1) % m } else { base + p + 1 };
        (2 * e_in + 1, 2 * e_out)
    }

    /// Positions `(strand, index)` of the under and over visit of each crossing.
    pub fn visit_positions(&self) -> Vec<[(usize, usize); 2]> {
        let mut out = vec![[(usize::MAX, usize::MAX); 2]; self.signs.len()];
        for (s, st) in self.strands.iter().enumerate() {
            for (p, v) in st.visits.iter().enumerate() {
                out[v.crossing][usize::from(v.over)] = (s, p);
            }
        }
        out
    }

    /// Darts around crossing `c` counter-clockwise, starting at the incoming
    /// under dart.
    pub fn rotation(&self, c: usize, offsets: &[usize], pos: &[[(usize, usize); 2]]) -> [usize; 4] {
        let [(su, pu), (so, po)] = pos[c];
        let (ui, uo) = self.visit_darts(offsets, su, pu);
        let (oi, oo) = self.visit_darts(offsets, so, po);
        if self.signs[c] > 0 {
            [ui, oo, uo, oi]
        } else {
            [ui, oi, uo, oo]
        }
    }

    pub fn to_map(&self) -> CombMap<DartLabel> {
        let offsets = self.edge_offsets();
        let total = self.edge_total();
        let n = 2 * total;
        let mut alpha = vec![0; n];
        let mut labels = Vec::with_capacity(n);
        for (s, st) in self.strands.iter().enumerate() {
            for e in 0..st.edge_count() {
                let g = offsets[s] + e;
                alpha[2 * g] = 2 * g + 1;
                alpha[2 * g + 1] = 2 * g;
                labels.push(DartLabel { strand: s, edge: e, start: true });
                labels.push(DartLabel { strand: s, edge: e, start: false });
            }
        }
        // endpoints of open strands stay fixed
        let mut sigma: Vec<usize> = (0..n).collect();
        let pos = self.visit_positions();
        for c in 0..self.signs.len() {
            let r = self.rotation(c, &offsets, &pos);
            for i in 0..4 {
                sigma[r[i]] = r[(i + 1) % 4];
            }
        }
        CombMap::new(alpha, sigma, labels)
    }

    /// Connected components of the underlying graph, as sets of strands.
    pub fn strand_components(&self) -> Vec<Vec<usize>> {
        let k = self.strands.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let pos = self.visit_positions();
        for c in 0..self.signs.len() {
            let a = find(&mut parent, pos[c][0].0);
            let b = find(&mut parent, pos[c][1].0);
            parent[a] = b;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for s in 0..k {
            let r = find(&mut parent, s);
            groups.entry(r).or_default().push(s);
        }
        groups.into_values().collect()
    }

    /// Genus of the surface carried by the diagram when it is connected.
    pub fn genus(&self) -> Result<i64> {
        let m = self.to_map();
        if !m.is_connected() {
            return Err(Error::invalid("diagram graph is not connected"));
        }
        Ok(m.genus())
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Relabel crossings in order of first appearance, strand by strand.
    pub fn normalized(&self) -> Self {
        let mut map = vec![usize::MAX; self.signs.len()];
        let mut next = 0;
        for st in &self.strands {
            for v in &st.visits {
                if map[v.crossing] == usize::MAX {
                    map[v.crossing] = next;
                    next += 1;
                }
            }
        }
        let mut signs = vec![0; next];
        for (old, &new) in map.iter().enumerate() {
            if new != usize::MAX {
                signs[new] = self.signs[old];
            }
        }
        let strands = self
            .strands
            .iter()
            .map(|st| Strand {
                visits: st.visits.iter().map(|v| Visit::new(map[v.crossing], v.over)).collect(),
                closed: st.closed,
            })
            .collect();
        Self { strands, signs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil(sign: i8) -> CurveDiagram {
        let v = |c, o| Visit::new(c, o);
        CurveDiagram::new(
            vec![Strand::closed(vec![v(0, true), v(1, false), v(2, true), v(0, false), v(1, true), v(2, false)])],
            vec![sign; 3],
        )
        .unwrap()
    }

    #[test]
    fn trefoil_is_planar() {
        for s in [1, -1] {
            let d = trefoil(s);
            assert_eq!(d.genus().unwrap(), 0);
            assert_eq!(d.to_map().faces().len(), 5);
        }
    }

    #[test]
    fn mixed_signs_on_trefoil_code_are_not_planar() {
        let mut d = trefoil(1);
        d.signs[0] = -1;
        assert_eq!(d.genus().unwrap(), 1);
    }

    #[test]
    fn virtual_trefoil_lives_on_torus() {
        // the two-crossing virtual trefoil: O1 O2 U1 U2 with equal signs
        let v = |c, o| Visit::new(c, o);
        let d =
            CurveDiagram::new(vec![Strand::closed(vec![v(0, true), v(1, true), v(0, false), v(1, false)])], vec![1, 1])
                .unwrap();
        assert_eq!(d.genus().unwrap(), 1);
    }

    #[test]
    fn open_arc_with_kink() {
        let v = |c, o| Visit::new(c, o);
        let d = CurveDiagram::new(vec![Strand::open(vec![v(0, true), v(0, false)])], vec![1]).unwrap();
        let m = d.to_map();
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.faces().len(), 2);
    }

    #[test]
    fn rejects_double_over() {
        let v = |c, o| Visit::new(c, o);
        let r = CurveDiagram::new(vec![Strand::closed(vec![v(0, true), v(0, true)])], vec![1]);
        assert!(r.is_err());
    }
}
