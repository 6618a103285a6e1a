//! Oriented combinatorial maps: darts with an edge involution `alpha` and a
//! counter-clockwise vertex rotation `sigma`.
//!
//! Faces are the orbits of `phi = sigma . alpha`; the face of a dart is the
//! one on its right when walking away from its vertex.

use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombMap<L> {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    labels: Vec<L>,
}

impl<L: Clone + Eq> CombMap<L> {
    /// Panics if `alpha` is not a fixed-point-free involution or `sigma` is
    /// not a permutation.
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>, labels: Vec<L>) -> Self {
        let n = alpha.len();
        assert_eq!(sigma.len(), n);
        assert_eq!(labels.len(), n);
        let mut seen = vec![false; n];
        for d in 0..n {
            assert!(alpha[d] < n && alpha[d] != d && alpha[alpha[d]] == d, "alpha at {d}");
            assert!(sigma[d] < n && !seen[sigma[d]], "sigma at {d}");
            seen[sigma[d]] = true;
        }
        Self { alpha, sigma, labels }
    }

    pub fn darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    pub fn label(&self, d: usize) -> &L {
        &self.labels[d]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    fn orbits(&self, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let n = self.darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = step(d);
            }
            out.push(orbit);
        }
        out
    }

    /// Faces ordered by smallest dart, each listed from its smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.phi(d))
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.orbits(|d| self.sigma[d])
    }

    /// Face index of every dart, consistent with [`CombMap::faces`].
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.darts()];
        for (i, f) in self.faces().iter().enumerate() {
            for &d in f {
                idx[d] = i;
            }
        }
        idx
    }

    pub fn vertex_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.darts()];
        for (i, v) in self.vertices().iter().enumerate() {
            for &d in v {
                idx[d] = i;
            }
        }
        idx
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = (self.darts() / 2) as i64;
        let f = self.faces().len() as i64;
        v - e + f
    }

    pub fn is_connected(&self) -> bool {
        let n = self.darts();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for e in [self.alpha[d], self.sigma[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    queue.push_back(e);
                }
            }
        }
        // sigma orbits are closed, so forward steps reach every dart of a component
        count == n
    }

    /// Genus of a connected closed map.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Mirror image: reverse every rotation.
    pub fn reflected(&self) -> Self {
        let mut sigma = vec![0; self.darts()];
        for d in 0..self.darts() {
            sigma[self.sigma[d]] = d;
        }
        Self { alpha: self.alpha.clone(), sigma, labels: self.labels.clone() }
    }

    /// Label-preserving, orientation-preserving isomorphism onto `other`,
    /// found by fixing the image of one dart and propagating along `alpha` and
    /// `sigma`. Both maps must be connected.
    pub fn isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        let n = self.darts();
        if n != other.darts() {
            return None;
        }
        if n == 0 {
            return Some(Vec::new());
        }
        let root = 0;
        'cand: for cand in 0..n {
            if other.labels[cand] != self.labels[root] {
                continue;
            }
            let mut fwd = vec![usize::MAX; n];
            let mut bwd = vec![usize::MAX; n];
            fwd[root] = cand;
            bwd[cand] = root;
            let mut queue = VecDeque::from([root]);
            while let Some(d) = queue.pop_front() {
                let img = fwd[d];
                for (x, y) in [(self.alpha[d], other.alpha[img]), (self.sigma[d], other.sigma[img])] {
                    if self.labels[x] != other.labels[y] {
                        continue 'cand;
                    }
                    match (fwd[x], bwd[y]) {
                        (usize::MAX, usize::MAX) => {
                            fwd[x] = y;
                            bwd[y] = x;
                            queue.push_back(x);
                        }
                        (fx, by) if fx == y && by == x => {}
                        _ => continue 'cand,
                    }
                }
            }
            if fwd.iter().all(|&x| x != usize::MAX) {
                return Some(fwd);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism(other).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // a single loop edge at a 2-valent vertex on the sphere
    fn loop_map() -> CombMap<u8> {
        CombMap::new(vec![1, 0], vec![1, 0], vec![0, 0])
    }

    #[test]
    fn loop_on_sphere() {
        let m = loop_map();
        assert_eq!(m.vertices().len(), 1);
        assert_eq!(m.faces().len(), 2);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn bouquet_on_torus() {
        // one vertex, two loops a, b interleaved: a+ b+ a- b-
        let alpha = vec![2, 3, 0, 1];
        let sigma = vec![1, 2, 3, 0];
        let m = CombMap::new(alpha, sigma, vec![0; 4]);
        assert_eq!(m.faces().len(), 1);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn relabeled_map_is_isomorphic() {
        let alpha = vec![2, 3, 0, 1];
        let sigma = vec![1, 2, 3, 0];
        let m = CombMap::new(alpha, sigma, vec![0u8, 1, 0, 1]);
        // conjugate by the permutation p = [2,0,3,1]
        let p = [2usize, 0, 3, 1];
        let mut a2 = vec![0; 4];
        let mut s2 = vec![0; 4];
        let mut l2 = vec![0u8; 4];
        for d in 0..4 {
            a2[p[d]] = p[m.alpha(d)];
            s2[p[d]] = p[m.sigma(d)];
            l2[p[d]] = *m.label(d);
        }
        let m2 = CombMap::new(a2, s2, l2);
        let iso = m.isomorphism(&m2).unwrap();
        assert_eq!(iso, p.to_vec());
    }

    #[test]
    fn mirror_of_chiral_labels_differs() {
        // vertex with three labelled darts: rotation order matters
        let alpha = vec![3, 4, 5, 0, 1, 2];
        let sigma = vec![1, 2, 0, 4, 5, 3];
        let m = CombMap::new(alpha, sigma, vec![0u8, 1, 2, 0, 1, 2]);
        let r = m.reflected();
        assert_eq!(r.euler_characteristic(), m.euler_characteristic());
        assert!(!m.is_isomorphic(&r));
    }
}
