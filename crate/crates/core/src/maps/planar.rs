//! Surgery presentations for the planar images.
//!
//! Start from the knot-and-belts link of the spherical diagram. Its belt
//! complement is `T^2 x I`; removing a puncture arc `tau` from belt2 (below
//! everything) around the point at infinity to belt1 (above everything)
//! leaves the thickened punctured torus, a genus 2 handlebody. Shrinking
//! `tau` to a small ball `B` drags the belts along it as fingers, so that the
//! handlebody becomes the complement of `B` and of the belt arcs. Further
//! punctures add arcs from `B` dropping under everything, rising through the
//! punctured face and returning over everything. Doubling across the
//! boundary is then inversion in `B`: a mirror copy with the same crossing
//! levels, every arc closing up with its image into a 0-framed circle.

use std::collections::VecDeque;

use crate::curves::{CurveDiagram, Strand, Visit};
use crate::diagram::KnotoidDiagram;
use crate::error::{Error, Result};
use crate::pd::LinkPD;
use crate::shortcut::Shortcut;

use super::belts::{belt_link, BELT1, BELT2, KNOT};

/// An edge named by the visit it starts after, which survives insertions
/// elsewhere. `None` stands for the only edge of a visit-free loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct EdgeRef {
    strand: usize,
    after: Option<Visit>,
}

impl EdgeRef {
    fn of(c: &CurveDiagram, strand: usize, edge: usize) -> Self {
        let vs = &c.strands[strand].visits;
        let after = if vs.is_empty() { None } else { Some(vs[(edge + vs.len() - 1) % vs.len()]) };
        Self { strand, after }
    }

    fn local(&self, c: &CurveDiagram) -> usize {
        let vs = &c.strands[self.strand].visits;
        match self.after {
            None => 0,
            Some(v) => (vs.iter().position(|&w| w == v).expect("edge reference is live") + 1) % vs.len(),
        }
    }

    fn global(&self, c: &CurveDiagram) -> usize {
        c.edge_offsets()[self.strand] + self.local(c)
    }

    fn dart(&self, c: &CurveDiagram, left: bool) -> usize {
        2 * self.global(c) + usize::from(left)
    }
}

enum Root {
    /// a finger leaving an edge of an existing strand on one side
    Edge { edge: EdgeRef, left: bool },
    /// a new closed strand starting inside a face
    Free,
}

/// Dual graph steps `(global edge, from right side to left side)`.
fn dual(c: &CurveDiagram, fi: &[usize], forbidden: &[usize]) -> Vec<Vec<(usize, usize, bool)>> {
    let nf = fi.iter().max().map_or(0, |m| m + 1);
    let mut adj = vec![Vec::new(); nf];
    for e in 0..c.edge_total() {
        let (r, l) = (fi[2 * e], fi[2 * e + 1]);
        if r == l || forbidden.contains(&e) {
            continue;
        }
        adj[r].push((l, e, true));
        adj[l].push((r, e, false));
    }
    for a in &mut adj {
        a.sort();
    }
    adj
}

fn distances_to(adj: &[Vec<(usize, usize, bool)>], goal: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[goal] = 0;
    let mut q = VecDeque::from([goal]);
    while let Some(f) = q.pop_front() {
        for &(g, _, _) in &adj[f] {
            if dist[g] == usize::MAX {
                dist[g] = dist[f] + 1;
                q.push_back(g);
            }
        }
    }
    dist
}

fn descend(adj: &[Vec<(usize, usize, bool)>], dist: &[usize], mut cur: usize) -> Vec<(usize, bool)> {
    let mut steps = Vec::new();
    while dist[cur] > 0 {
        let &(g, e, rtl) = adj[cur]
            .iter()
            .find(|(g, _, _)| dist[*g] != usize::MAX && dist[*g] + 1 == dist[cur])
            .expect("BFS layer has a successor");
        steps.push((e, rtl));
        cur = g;
    }
    steps
}

/// Inserts a hairpin along `steps`. Both lanes cross every edge on the way,
/// the outgoing lane at level `out_over` and the returning one at
/// `back_over`. Returns the diagram and the tip edge, which lies in the last
/// face for fingers and in the first face for free loops.
fn insert_hairpin(
    c: &CurveDiagram,
    root: &Root,
    steps: &[(usize, bool)],
    out_over: bool,
    back_over: bool,
) -> (CurveDiagram, EdgeRef) {
    let n = c.crossing_count();
    let offsets = c.edge_offsets();
    let locate = |g: usize| {
        let s = offsets.iter().rposition(|&o| o <= g).expect("edge has a strand");
        (s, g - offsets[s])
    };
    let out_left = matches!(root, Root::Edge { left: true, .. });
    let mut signs = c.signs.clone();
    let mut inserts: Vec<(usize, usize, Vec<Visit>)> = Vec::new();
    for (i, &(e, rtl)) in steps.iter().enumerate() {
        let (out, back) = (n + 2 * i, n + 2 * i + 1);
        signs.push(if !out_over == rtl { 1 } else { -1 });
        signs.push(if !back_over == !rtl { 1 } else { -1 });
        let (left, right) =
            if out_left { ((out, out_over), (back, back_over)) } else { ((back, back_over), (out, out_over)) };
        let (first, second) = if rtl { (left, right) } else { (right, left) };
        let (s, p) = locate(e);
        inserts.push((s, p, vec![Visit::new(first.0, !first.1), Visit::new(second.0, !second.1)]));
    }
    let mut lane: Vec<Visit> = (0..steps.len()).map(|i| Visit::new(n + 2 * i, out_over)).collect();
    lane.extend((0..steps.len()).rev().map(|i| Visit::new(n + 2 * i + 1, back_over)));

    let mut strands = c.strands.clone();
    let tip = match root {
        Root::Edge { edge, .. } => {
            let p = edge.local(c);
            let tip = match steps.len() {
                0 => *edge,
                h => EdgeRef { strand: edge.strand, after: Some(Visit::new(n + 2 * (h - 1), out_over)) },
            };
            inserts.push((edge.strand, p, lane));
            tip
        }
        Root::Free => {
            strands.push(Strand::closed(lane.clone()));
            EdgeRef { strand: strands.len() - 1, after: lane.last().copied() }
        }
    };
    inserts.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
    for (s, p, vs) in inserts {
        strands[s].visits.splice(p..p, vs);
    }
    (CurveDiagram::new(strands, signs).expect("hairpin insertion is valid"), tip)
}

/// The framed link whose surgery is the double of the thickened surface
/// minus the knot, with one puncture per listed face. Faces are named by a
/// dart of the spherical diagram `d`.
pub(crate) fn surgery_double(d: &KnotoidDiagram, sc: &Shortcut, punctures: &[usize]) -> Result<LinkPD> {
    if punctures.is_empty() {
        return Err(Error::InvalidArgument("surgery presentation needs a puncture".into()));
    }
    let bl = belt_link(d, sc);
    let mut c = bl.curves.clone();
    // puncture faces as sides of knot edges
    let sides: Vec<(EdgeRef, bool)> = punctures
        .iter()
        .map(|&x| {
            let y = bl.knotoid_dart(x);
            (EdgeRef::of(&c, KNOT, y / 2 - c.edge_offsets()[KNOT]), y % 2 == 1)
        })
        .collect();
    let face_of = |c: &CurveDiagram, (e, left): (EdgeRef, bool)| c.to_map().face_index()[e.dart(c, left)];

    let mut tips: Vec<EdgeRef> = Vec::new();
    // root edges as spans between visits of the belt link, which survive the
    // crossings added by earlier fingers
    let spans = |strand: usize, edges: &[usize]| -> Vec<(Visit, Visit)> {
        let vs = &bl.curves.strands[strand].visits;
        edges.iter().map(|&e| (vs[(e + vs.len() - 1) % vs.len()], vs[e])).collect()
    };
    let roots = [(BELT1, true, spans(BELT1, &bl.rising)), (BELT2, false, spans(BELT2, &bl.sinking))];
    // belt fingers into the first punctured face, belt1 above and belt2 below
    for (strand, level, span) in roots {
        let fi = c.to_map().face_index();
        let vs = &c.strands[strand].visits;
        let pos = |v: Visit| vs.iter().position(|&w| w == v).expect("belt visit survives");
        let mut legal = Vec::new();
        for &(from, to) in &span {
            let (mut p, end) = (pos(from), pos(to));
            loop {
                p = (p + 1) % vs.len();
                legal.push(p);
                if p == end {
                    break;
                }
            }
        }
        let forbidden: Vec<usize> = tips.iter().map(|t| t.global(&c)).collect();
        let adj = dual(&c, &fi, &forbidden);
        let goal = face_of(&c, sides[0]);
        let dist = distances_to(&adj, goal);
        let off = c.edge_offsets()[strand];
        let (_, e, left) = legal
            .iter()
            .flat_map(|&e| [false, true].map(|left| (dist[fi[2 * (off + e) + usize::from(left)]], e, left)))
            .min()
            .expect("belts have edges");
        let start = fi[2 * (off + e) + usize::from(left)];
        let steps = descend(&adj, &dist, start);
        let root = Root::Edge { edge: EdgeRef::of(&c, strand, e), left };
        let (next, tip) = insert_hairpin(&c, &root, &steps, level, level);
        c = next;
        tips.push(tip);
    }
    // remaining punctures: loops from the first face down, across and back over
    for &side in &sides[1..] {
        let fi = c.to_map().face_index();
        let forbidden: Vec<usize> = tips.iter().map(|t| t.global(&c)).collect();
        let adj = dual(&c, &fi, &forbidden);
        let goal = face_of(&c, side);
        let dist = distances_to(&adj, goal);
        let start = face_of(&c, sides[0]);
        if dist[start] == usize::MAX {
            return Err(Error::invalid("punctured faces are not connected"));
        }
        let steps = descend(&adj, &dist, start);
        let (next, tip) = insert_hairpin(&c, &Root::Free, &steps, false, true);
        c = next;
        tips.push(tip);
    }
    Ok(double_across_ball(&c, &tips))
}

/// Inversion in the ball holding the cut points: the mirror copy keeps
/// crossing levels and reverses the plane, and each cut arc closes up with
/// its image.
fn double_across_ball(c: &CurveDiagram, tips: &[EdgeRef]) -> LinkPD {
    let n = c.crossing_count();
    let arcs: Vec<(usize, Vec<Visit>)> = tips
        .iter()
        .map(|t| {
            let vs = &c.strands[t.strand].visits;
            let p = t.local(c);
            let mut arc = vs[p..].to_vec();
            arc.extend_from_slice(&vs[..p]);
            (t.strand, arc)
        })
        .collect();
    let reversed: Vec<bool> = (0..c.strands.len()).map(|s| s != KNOT).collect();
    let pos = c.visit_positions();
    let mut signs = c.signs.clone();
    for x in 0..n {
        let flips = usize::from(reversed[pos[x][0].0]) + usize::from(reversed[pos[x][1].0]);
        signs.push(if flips % 2 == 0 { -c.signs[x] } else { c.signs[x] });
    }
    let shift = |v: &Visit| Visit::new(v.crossing + n, v.over);
    let knot = &c.strands[KNOT].visits;
    let mut strands = vec![Strand::closed(knot.clone()), Strand::closed(knot.iter().map(shift).collect())];
    for (_, arc) in &arcs {
        let mut circle = arc.clone();
        circle.extend(arc.iter().rev().map(shift));
        strands.push(Strand::closed(circle));
    }
    let doubled = CurveDiagram::new(strands, signs).expect("double is valid");
    let mut labels = vec!["knot".to_string(), "knot_mirror".to_string()];
    labels.extend((1..=arcs.len()).map(|i| format!("rail{i}")));
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut framings = vec![None, None];
    framings.extend(arcs.iter().map(|_| Some((0, 1))));
    LinkPD::from_curves(&doubled, &labels, &framings).expect("double has closed strands")
}
