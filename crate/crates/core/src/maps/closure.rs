//! Over- and underclosures along a shortcut.

use std::fmt;
use std::str::FromStr;

use crate::curves::{CurveDiagram, Strand, Visit};
use crate::diagram::KnotoidDiagram;
use crate::error::{Error, Result};
use crate::pd::LinkPD;
use crate::shortcut::{shortest_shortcut, Shortcut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureKind {
    Under,
    Over,
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureKind::Under => "under",
            ClosureKind::Over => "over",
        })
    }
}

impl FromStr for ClosureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "under" => Ok(ClosureKind::Under),
            "over" => Ok(ClosureKind::Over),
            o => Err(Error::syntax(format!("unknown closure kind `{o}`"))),
        }
    }
}

/// Closed strand: the knotoid walk followed by the closure arc, which runs
/// from the head back to the tail along the shortcut. Shortcut crossings get
/// ids after the knotoid's own.
pub fn closure_curves(d: &KnotoidDiagram, sc: &Shortcut, kind: ClosureKind) -> CurveDiagram {
    let n = d.crossing_count();
    let arc_over = kind == ClosureKind::Over;
    let mut walk = d.walk().to_vec();
    let mut order: Vec<usize> = (0..sc.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(sc.steps[k].edge));
    for k in order {
        walk.insert(sc.steps[k].edge, Visit::new(n + k, !arc_over));
    }
    let mut signs = d.signs().to_vec();
    for step in &sc.steps {
        // the arc runs head to tail, against the shortcut
        let arc_r2l = !step.right_to_left;
        signs.push(if arc_r2l != arc_over { 1 } else { -1 });
    }
    for k in (0..sc.len()).rev() {
        walk.push(Visit::new(n + k, arc_over));
    }
    CurveDiagram::new(vec![Strand::closed(walk)], signs).expect("closure is a valid diagram")
}

pub fn closure_with(d: &KnotoidDiagram, sc: &Shortcut, kind: ClosureKind) -> LinkPD {
    LinkPD::from_curves(&closure_curves(d, sc, kind), &["knot"], &[]).expect("closed strand")
}

/// Closure along the canonical shortest shortcut.
pub fn closure(d: &KnotoidDiagram, kind: ClosureKind) -> LinkPD {
    closure_with(d, &shortest_shortcut(d), kind)
}
