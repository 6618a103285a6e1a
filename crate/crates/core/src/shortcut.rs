//! Shortcuts: arcs from the tail to the head crossing the diagram
//! transversely, found as paths in the dual graph.

use std::collections::VecDeque;

use crate::diagram::KnotoidDiagram;

/// One crossing of a shortcut with an edge of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    /// the shortcut, run from tail to head, passes from the right side of
    /// the edge to its left
    pub right_to_left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shortcut {
    /// faces from the tail face to the head face
    pub faces: Vec<usize>,
    pub steps: Vec<Step>,
}

impl Shortcut {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Dual adjacency: for each face, `(neighbour, step)` pairs sorted by
/// neighbour then edge. Edges with one face on both sides are skipped.
fn dual(d: &KnotoidDiagram, fi: &[usize], nf: usize) -> Vec<Vec<(usize, Step)>> {
    let mut adj = vec![Vec::new(); nf];
    for e in 0..d.edge_count() {
        let (r, l) = (fi[2 * e], fi[2 * e + 1]);
        if r == l {
            continue;
        }
        adj[r].push((l, Step { edge: e, right_to_left: true }));
        adj[l].push((r, Step { edge: e, right_to_left: false }));
    }
    for a in &mut adj {
        a.sort();
    }
    adj
}

fn distances(adj: &[Vec<(usize, Step)>], from: usize, avoid: &[usize], goal: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(f) = q.pop_front() {
        for &(g, _) in &adj[f] {
            // avoided faces may still be the end of the path
            if dist[g] == usize::MAX && (g == goal || !avoid.contains(&g)) {
                dist[g] = dist[f] + 1;
                if g != goal {
                    q.push_back(g);
                }
            }
        }
    }
    dist
}

/// The canonical shortest shortcut: among shortest dual paths, the
/// lexicographically smallest sequence of (face, edge) choices from the tail.
/// Faces in `avoid` are not used as intermediate faces.
pub fn shortest_shortcut_avoiding(d: &KnotoidDiagram, avoid: &[usize]) -> Option<Shortcut> {
    let fi = d.face_index();
    let nf = fi.iter().max().map_or(0, |m| m + 1);
    let adj = dual(d, &fi, nf);
    let (t, h) = (fi[0], fi[d.head_dart()]);
    let dist = distances(&adj, h, avoid, t);
    if dist[t] == usize::MAX {
        return None;
    }
    let mut faces = vec![t];
    let mut steps = Vec::new();
    let mut cur = t;
    while cur != h {
        let &(g, s) = adj[cur]
            .iter()
            .find(|(g, _)| dist[*g] != usize::MAX && dist[*g] + 1 == dist[cur] && (*g == h || !avoid.contains(g)))
            .expect("BFS layer has a predecessor");
        faces.push(g);
        steps.push(s);
        cur = g;
    }
    Some(Shortcut { faces, steps })
}

pub fn shortest_shortcut(d: &KnotoidDiagram) -> Shortcut {
    shortest_shortcut_avoiding(d, &[]).expect("dual graph of a connected diagram is connected")
}

/// All shortest shortcuts, up to `limit` of them, in lexicographic order.
pub fn shortest_shortcuts(d: &KnotoidDiagram, limit: usize) -> Vec<Shortcut> {
    let fi = d.face_index();
    let nf = fi.iter().max().map_or(0, |m| m + 1);
    let adj = dual(d, &fi, nf);
    let (t, h) = (fi[0], fi[d.head_dart()]);
    let dist = distances(&adj, h, &[], t);
    let mut out = Vec::new();
    let mut faces = vec![t];
    let mut steps = Vec::new();
    fn rec(
        cur: usize,
        h: usize,
        adj: &[Vec<(usize, Step)>],
        dist: &[usize],
        faces: &mut Vec<usize>,
        steps: &mut Vec<Step>,
        out: &mut Vec<Shortcut>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if cur == h {
            out.push(Shortcut { faces: faces.clone(), steps: steps.clone() });
            return;
        }
        for &(g, s) in &adj[cur] {
            if dist[g] != usize::MAX && dist[g] + 1 == dist[cur] {
                faces.push(g);
                steps.push(s);
                rec(g, h, adj, dist, faces, steps, out, limit);
                faces.pop();
                steps.pop();
            }
        }
    }
    rec(t, h, &adj, &dist, &mut faces, &mut steps, &mut out, limit);
    out
}

/// Intersection count of the shortest shortcut in this diagram; an upper
/// bound for the height of the knotoid.
pub fn height_upper_bound(d: &KnotoidDiagram) -> usize {
    shortest_shortcut(d).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Surface;

    #[test]
    fn trivial_has_height_zero() {
        assert_eq!(height_upper_bound(&KnotoidDiagram::trivial(Surface::Sphere)), 0);
    }

    #[test]
    fn two_one_has_height_one() {
        let d = KnotoidDiagram::parse("sphere; C1-o C2-u C1-u C2-o").unwrap();
        assert_eq!(height_upper_bound(&d), 1);
        let all = shortest_shortcuts(&d, 100);
        assert!(!all.is_empty());
        assert_eq!(all[0], shortest_shortcut(&d));
        assert!(all.iter().all(|s| s.len() == 1));
    }
}
