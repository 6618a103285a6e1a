//! Four-ended tangles built by twisting, as port graphs.
//!
//! Every crossing has ports `4x..4x+4` in counter-clockwise order, pointing
//! NE, NW, SW, SE when the crossing is drawn upright. Ports `k` and `k+2`
//! lie on one strand. Terminals are one-port vertices numbered after the
//! crossing ports.

use crate::curves::Visit;
use crate::diagram::{KnotoidDiagram, Surface};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct PortGraph {
    /// partner of every port
    pub link: Vec<usize>,
    /// whether the strand through ports 0 and 2 is over, per crossing
    pub over02: Vec<bool>,
    pub crossings: usize,
}

impl PortGraph {
    fn new() -> Self {
        Self { link: Vec::new(), over02: Vec::new(), crossings: 0 }
    }

    fn is_crossing_port(&self, p: usize) -> bool {
        p < 4 * self.crossings
    }

    fn connect(&mut self, a: usize, b: usize) {
        self.link[a] = b;
        self.link[b] = a;
    }

    /// Trace the arc from terminal `tail` and read off walk and signs.
    /// Errors if some crossing is missed, which means a closed component.
    pub fn trace(&self, tail: usize, name: &str) -> Result<(Vec<Visit>, Vec<i8>, usize)> {
        let mut walk = Vec::new();
        let mut in_ports = vec![[NONE; 2]; self.crossings];
        let mut cur = self.link[tail];
        while self.is_crossing_port(cur) {
            let (x, k) = (cur / 4, cur % 4);
            let over = (k % 2 == 0) == self.over02[x];
            in_ports[x][usize::from(over)] = k;
            walk.push(Visit::new(x, over));
            cur = self.link[4 * x + (k + 2) % 4];
            if walk.len() > 2 * self.crossings {
                return Err(Error::invalid("port graph arc does not terminate"));
            }
        }
        if walk.len() != 2 * self.crossings {
            return Err(Error::TwoComponents(name.to_string()));
        }
        let signs =
            in_ports.iter().map(|&[u_in, o_in]| if (o_in + 2) % 4 == (u_in + 1) % 4 { 1 } else { -1 }).collect();
        Ok((walk, signs, cur))
    }
}

/// Tangle with its four boundary terminals.
#[derive(Clone, Debug)]
pub struct Tangle {
    pub graph: PortGraph,
    pub nw: usize,
    pub sw: usize,
    pub se: usize,
    pub ne: usize,
}

impl Tangle {
    /// The 0 tangle: arcs NW-NE and SW-SE.
    pub fn zero() -> Self {
        let mut g = PortGraph::new();
        g.link = vec![NONE; 4];
        let (nw, sw, se, ne) = (0, 1, 2, 3);
        g.connect(nw, ne);
        g.connect(sw, se);
        Self { graph: g, nw, sw, se, ne }
    }

    fn add_crossing(&mut self, over02: bool) -> usize {
        let g = &mut self.graph;
        // crossing ports come first: shift terminals up by four
        let x = g.crossings;
        let shift = |p: usize| if p >= 4 * x { p + 4 } else { p };
        let old = std::mem::take(&mut g.link);
        let mut link = vec![NONE; old.len() + 4];
        for (p, &q) in old.iter().enumerate() {
            link[shift(p)] = if q == NONE { NONE } else { shift(q) };
        }
        g.link = link;
        g.over02.push(over02);
        g.crossings += 1;
        self.nw = shift(self.nw);
        self.sw = shift(self.sw);
        self.se = shift(self.se);
        self.ne = shift(self.ne);
        x
    }

    /// Insert crossing `x` between terminal `t` and its interior neighbour,
    /// attaching the inner side to port `inner` and the terminal to `outer`.
    fn splice(&mut self, t: usize, inner: usize, outer: usize) {
        let q = self.graph.link[t];
        self.graph.connect(q, inner);
        self.graph.connect(t, outer);
    }

    /// One crossing on the east side, exchanging the NE and SE ends.
    pub fn twist_right(&mut self, over02: bool) {
        let x = self.add_crossing(over02);
        let p = |k| 4 * x + k;
        self.splice(self.ne, p(1), p(0));
        self.splice(self.se, p(2), p(3));
    }

    /// One crossing on the south side, exchanging the SW and SE ends.
    pub fn twist_bottom(&mut self, over02: bool) {
        let x = self.add_crossing(over02);
        let p = |k| 4 * x + k;
        self.splice(self.sw, p(1), p(2));
        self.splice(self.se, p(0), p(3));
    }

    /// Alternating rational tangle: `code[0]` twists on the east, then
    /// alternately south and east. Signs of the entries choose handedness.
    pub fn rational(code: &[i64]) -> Self {
        let mut t = Self::zero();
        for (i, &a) in code.iter().enumerate() {
            for _ in 0..a.unsigned_abs() {
                if i % 2 == 0 {
                    t.twist_right(a > 0);
                } else {
                    t.twist_bottom(a > 0);
                }
            }
        }
        t
    }

    /// Join NE to SW outside the tangle; NW becomes the tail and SE the head.
    /// The result is read from below the projection plane, which swaps
    /// crossing levels and reverses the plane orientation, so signs are kept; with
    /// this choice the tangle `[2]` gives the catalog `2_1`.
    pub fn knotoid(&self, surface: Surface, name: &str) -> Result<KnotoidDiagram> {
        let mut g = self.graph.clone();
        let (a, b) = (g.link[self.ne], g.link[self.sw]);
        if a == self.sw {
            return Err(Error::TwoComponents(name.to_string()));
        }
        g.connect(a, b);
        g.link[self.ne] = NONE;
        g.link[self.sw] = NONE;
        let (walk, signs, end) = g.trace(self.nw, name)?;
        if end != self.se {
            return Err(Error::TwoComponents(name.to_string()));
        }
        // the joining strand runs around the lower right, so on the plane
        // the unbounded region is the one holding the NW end
        let ext = (surface == Surface::Plane).then_some(0);
        let walk = walk.into_iter().map(|v| Visit::new(v.crossing, !v.over)).collect();
        KnotoidDiagram::new(walk, signs, surface, ext)
    }
}
