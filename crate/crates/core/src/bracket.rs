//! Kauffman bracket and Jones polynomial of link diagrams.
//!
//! Normalization: the crossingless unknot has bracket 1 and every further
//! loop contributes `d = -A^2 - A^-2`. At `X[a,b,c,d]` the A-smoothing joins
//! `a` with `b` and `c` with `d`; a positive kink then evaluates to `-A^3`.
//! The Jones polynomial is reported in the variable `A` as
//! `(-A^3)^(-w) <D>`; substituting `A = t^(-1/4)` gives the usual `V(t)`.

use std::collections::HashMap;

use crate::curves::CurveDiagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::pd::LinkPD;

/// State sums beyond this size are refused.
pub const MAX_STATE_SUM_CROSSINGS: usize = 26;

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

fn free_loops(pd: &LinkPD) -> usize {
    pd.components.iter().filter(|c| c.edges.len() == 1 && !pd.crossings.iter().any(|x| x.contains(&c.edges[0]))).count()
}

fn expand(counts: &HashMap<(i32, usize), i64>) -> LaurentPoly {
    let delta = LaurentPoly::delta();
    let max_loops = counts.keys().map(|k| k.1).max().unwrap_or(1);
    let mut powers = vec![LaurentPoly::one()];
    for i in 1..max_loops {
        let next = &powers[i - 1] * &delta;
        powers.push(next);
    }
    let mut out = LaurentPoly::zero();
    for (&(e, loops), &c) in counts {
        out += &powers[loops - 1].scale(c, e);
    }
    out
}

/// Bracket by summing over all smoothing states.
pub fn bracket(pd: &LinkPD) -> Result<LaurentPoly> {
    let n = pd.crossing_count();
    if n > MAX_STATE_SUM_CROSSINGS {
        return Err(Error::Unsupported(format!("{n} crossings exceed the state-sum limit")));
    }
    let extra = free_loops(pd);
    if n == 0 {
        return Ok(expand(&HashMap::from([((0, extra.max(1)), 1)])));
    }
    // compact edge labels
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let xs: Vec<[usize; 4]> = pd
        .crossings
        .iter()
        .map(|x| {
            x.map(|l| {
                let k = ids.len();
                *ids.entry(l).or_insert(k)
            })
        })
        .collect();
    let m = ids.len();
    let mut counts: HashMap<(i32, usize), i64> = HashMap::new();
    let mut parent = vec![0; m];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut a_minus_b = 0i32;
        for (i, &[a, b, c, d]) in xs.iter().enumerate() {
            let (p, q, r, s) = if state >> i & 1 == 0 {
                a_minus_b += 1;
                (a, b, c, d)
            } else {
                a_minus_b -= 1;
                (a, d, b, c)
            };
            let (x, y) = (find(&mut parent, p), find(&mut parent, q));
            parent[x] = y;
            let (x, y) = (find(&mut parent, r), find(&mut parent, s));
            parent[x] = y;
        }
        let loops = (0..m).filter(|&i| find(&mut parent, i) == i).count() + extra;
        *counts.entry((a_minus_b, loops)).or_insert(0) += 1;
    }
    Ok(expand(&counts))
}

/// Independent recursive skein expansion on the slot graph of the diagram:
/// each crossing is removed by rewiring its neighbours.
pub fn bracket_skein(pd: &LinkPD) -> LaurentPoly {
    let n = pd.crossing_count();
    // slot 4x+k is position k of crossing x; link pairs slots sharing an edge
    let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
    for (x, cr) in pd.crossings.iter().enumerate() {
        for k in 0..4 {
            by_label.entry(cr[k]).or_default().push(4 * x + k);
        }
    }
    let mut link = vec![usize::MAX; 4 * n];
    for slots in by_label.values() {
        link[slots[0]] = slots[1];
        link[slots[1]] = slots[0];
    }
    fn rec(link: &mut Vec<usize>, live: usize, loops: usize) -> LaurentPoly {
        if live == 0 {
            return LaurentPoly::delta().pow(loops as u32 - 1);
        }
        let x = live - 1;
        let s = [4 * x, 4 * x + 1, 4 * x + 2, 4 * x + 3];
        let mut out = LaurentPoly::zero();
        for (pairs, e) in [([(s[0], s[1]), (s[2], s[3])], 1), ([(s[0], s[3]), (s[1], s[2])], -1)] {
            let mut l = link.clone();
            let mut extra = 0;
            for (p, q) in pairs {
                if l[p] == q {
                    extra += 1;
                } else {
                    let (u, v) = (l[p], l[q]);
                    l[u] = v;
                    l[v] = u;
                }
            }
            out += &rec(&mut l, x, loops + extra).scale(1, e);
        }
        out
    }
    let loops = free_loops(pd);
    if n == 0 {
        return LaurentPoly::delta().pow(loops.max(1) as u32 - 1);
    }
    rec(&mut link, n, loops)
}

/// `(-A^3)^(-w) <D>`.
pub fn jones(pd: &LinkPD) -> Result<LaurentPoly> {
    Ok(bracket(pd)?.times_neg_a3_pow(-(pd.writhe() as i32)))
}

/// Bracket of a closed diagram given as curves; each connected piece must
/// be planar.
pub fn bracket_curves(d: &CurveDiagram) -> Result<LaurentPoly> {
    let m = d.to_map();
    let pieces = d.strand_components().iter().filter(|c| c.iter().any(|&s| !d.strands[s].visits.is_empty())).count();
    if m.darts() > 0 && m.euler_characteristic() != 2 * pieces as i64 {
        return Err(Error::Unsupported("diagram is not planar".into()));
    }
    let labels: Vec<String> = (0..d.strands.len()).map(|i| format!("c{i}")).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    bracket(&LinkPD::from_curves(d, &labels, &[])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Strand, Visit};

    fn knot(visits: Vec<(usize, bool)>, signs: Vec<i8>) -> LinkPD {
        let st = Strand::closed(visits.into_iter().map(|(c, o)| Visit::new(c, o)).collect());
        LinkPD::from_curves(&CurveDiagram::new(vec![st], signs).unwrap(), &["knot"], &[]).unwrap()
    }

    #[test]
    fn unknot_is_one() {
        let pd: LinkPD = " ; comp=k:1-1".parse().unwrap();
        assert_eq!(bracket(&pd).unwrap(), LaurentPoly::one());
        assert_eq!(bracket_skein(&pd), LaurentPoly::one());
    }

    #[test]
    fn positive_kink() {
        let pd = knot(vec![(0, true), (0, false)], vec![1]);
        assert_eq!(bracket(&pd).unwrap(), LaurentPoly::monomial(-1, 3));
        assert_eq!(jones(&pd).unwrap(), LaurentPoly::one());
        let neg = knot(vec![(0, true), (0, false)], vec![-1]);
        assert_eq!(bracket(&neg).unwrap(), LaurentPoly::monomial(-1, -3));
    }

    #[test]
    fn trefoil_jones() {
        let pd = knot(vec![(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)], vec![1, 1, 1]);
        // all-positive trefoil: t + t^3 - t^4 with t = A^-4
        let j = jones(&pd).unwrap();
        assert_eq!(j.to_string(), "1*A^-4+1*A^-12-1*A^-16");
        assert_eq!(jones(&pd.mirror()).unwrap(), j.mirror());
    }

    #[test]
    fn hopf_link_and_split_loop() {
        let pd: LinkPD = "X[1,3,2,4] X[3,1,4,2] ; comp=a:1-2 ; comp=b:3-4".parse().unwrap();
        // positive Hopf link: -A^4 - A^-4 for the bracket
        assert_eq!(bracket(&pd).unwrap().to_string(), "-1*A^4-1*A^-4");
        let split: LinkPD = "X[1,3,2,4] X[3,1,4,2] ; comp=a:1-2 ; comp=b:3-4 ; comp=c:5-5".parse().unwrap();
        assert_eq!(bracket(&split).unwrap(), &bracket(&pd).unwrap() * &LaurentPoly::delta());
    }

    #[test]
    fn state_sum_matches_skein() {
        let pd = knot(
            vec![(0, true), (1, false), (2, true), (3, false), (1, true), (0, false), (3, true), (2, false)],
            vec![1, 1, -1, -1],
        );
        assert_eq!(bracket(&pd).unwrap(), bracket_skein(&pd));
    }
}
