//! Knot diagrams on closed and punctured surfaces.
//!
//! A surface diagram is a set of closed strands whose rotation system
//! carries the surface. Knot strands are the image of the knotoid; seam
//! strands trace the circles along which the knotoid's endpoint disks were
//! glued, and their crossings with the knot are virtual in the sense that
//! they are not crossings of the knot in the thickened surface.

use std::collections::HashMap;

use crate::cmap::CombMap;
use crate::curves::{CurveDiagram, DartLabel, Strand, Visit};
use crate::diagram::KnotoidDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrandRole {
    Knot,
    Seam,
}

/// Label used when comparing surface diagrams: what the dart belongs to,
/// whether it leaves its vertex, and the level of its strand there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleLabel {
    pub role: StrandRole,
    pub start: bool,
    pub over: bool,
    pub punctured: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDiagram {
    pub curves: CurveDiagram,
    pub roles: Vec<StrandRole>,
    pub genus: usize,
    /// one dart on the face holding each puncture
    pub punctures: Vec<usize>,
    /// knot edges met by the dual cut curve, as (global edge, right to left)
    pub dual_cut: Vec<(usize, bool)>,
}

impl SurfaceDiagram {
    /// Checks that the rotation system carries a closed surface of the
    /// claimed genus.
    pub fn new(
        curves: CurveDiagram,
        roles: Vec<StrandRole>,
        genus: usize,
        punctures: Vec<usize>,
        dual_cut: Vec<(usize, bool)>,
    ) -> Result<Self> {
        if roles.len() != curves.strands.len() || curves.strands.iter().any(|s| !s.closed) {
            return Err(Error::invalid("surface diagrams need one role per closed strand"));
        }
        let out = Self { curves, roles, genus, punctures, dual_cut };
        let m = out.map();
        if !m.is_connected() {
            return Err(Error::invalid("surface diagram is not connected"));
        }
        if out.euler_characteristic() != 2 - 2 * genus as i64 - out.punctures.len() as i64 {
            return Err(Error::invalid(format!(
                "Euler formula fails: V - E + F = {} for genus {genus} with {} punctures",
                out.euler_characteristic(),
                out.punctures.len()
            )));
        }
        Ok(out)
    }

    pub fn map(&self) -> CombMap<DartLabel> {
        self.curves.to_map()
    }

    pub fn vertex_count(&self) -> usize {
        self.curves.crossing_count()
    }

    pub fn edge_count(&self) -> usize {
        self.curves.edge_total()
    }

    /// Faces of the rotation system, less one for every puncture.
    pub fn face_count(&self) -> usize {
        self.map().faces().len() - self.punctures.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn knot_component_count(&self) -> usize {
        self.roles.iter().filter(|&&r| r == StrandRole::Knot).count()
    }

    /// Crossings of the knot with itself.
    pub fn classical_crossings(&self) -> usize {
        let pos = self.curves.visit_positions();
        pos.iter().filter(|p| p.iter().all(|&(s, _)| self.roles[s] == StrandRole::Knot)).count()
    }

    /// Crossings between knot and seam strands.
    pub fn seam_intersections(&self) -> usize {
        self.vertex_count() - self.classical_crossings()
    }

    pub fn role_map(&self) -> CombMap<RoleLabel> {
        let m = self.map();
        let fi = m.face_index();
        let punctured: Vec<usize> = self.punctures.iter().map(|&x| fi[x]).collect();
        let offsets = self.curves.edge_offsets();
        let mut over = vec![false; m.darts()];
        for (s, st) in self.curves.strands.iter().enumerate() {
            for (p, v) in st.visits.iter().enumerate() {
                let (din, dout) = self.curves.visit_darts(&offsets, s, p);
                over[din] = v.over;
                over[dout] = v.over;
            }
        }
        let labels = (0..m.darts())
            .map(|d| RoleLabel {
                role: self.roles[m.label(d).strand],
                start: m.label(d).start,
                over: over[d],
                punctured: punctured.contains(&fi[d]),
            })
            .collect();
        CombMap::new((0..m.darts()).map(|d| m.alpha(d)).collect(), (0..m.darts()).map(|d| m.sigma(d)).collect(), labels)
    }

    /// Isomorphism of labelled maps, preserving the surface orientation.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.punctures.len() == other.punctures.len()
            && self.role_map().is_isomorphic(&other.role_map())
    }
}

/// Reads strands and signs back from a 4-valent labelled map: a strand goes
/// straight across each vertex, and the sign follows from the rotation.
pub(crate) fn curves_from_map(m: &CombMap<RoleLabel>) -> Result<(CurveDiagram, Vec<StrandRole>)> {
    let vi = m.vertex_index();
    let nv = vi.iter().max().map_or(0, |&x| x + 1);
    let opposite = |d: usize| m.sigma(m.sigma(d));
    let mut seen = vec![false; m.darts()];
    let mut strands = Vec::new();
    let mut roles = Vec::new();
    for x in 0..m.darts() {
        if seen[x] || !m.label(x).start {
            continue;
        }
        let mut visits = Vec::new();
        let mut cur = x;
        loop {
            seen[cur] = true;
            let y = m.alpha(cur);
            seen[y] = true;
            visits.push(Visit::new(vi[y], m.label(y).over));
            cur = opposite(y);
            if !m.label(cur).start {
                return Err(Error::invalid("strand does not pass straight through a vertex"));
            }
            if cur == x {
                break;
            }
        }
        strands.push(Strand::closed(visits));
        roles.push(m.label(x).role);
    }
    let mut ui_at: HashMap<usize, usize> = HashMap::new();
    for d in 0..m.darts() {
        let l = m.label(d);
        if !l.start && !l.over {
            ui_at.insert(vi[d], d);
        }
    }
    let signs = (0..nv)
        .map(|v| {
            let ui = ui_at[&v];
            let next = *m.label(m.sigma(ui));
            if next.start && next.over {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok((CurveDiagram::new(strands, signs)?, roles))
}

/// Knotoid map with the endpoints joined through one seam vertex. The seam
/// loop gets darts `2L+2` (leaving) and `2L+3`, and passes over the knot.
pub(crate) fn glued_map(d: &KnotoidDiagram, punctures: &[usize]) -> CombMap<RoleLabel> {
    let m = d.map();
    let head = d.head_dart();
    let (s0, s1) = (head + 1, head + 2);
    let mut alpha: Vec<usize> = (0..m.darts()).map(|x| m.alpha(x)).collect();
    let mut sigma: Vec<usize> = (0..m.darts()).map(|x| m.sigma(x)).collect();
    alpha.extend([s1, s0]);
    sigma.extend([0, 0]);
    for (a, b) in [(head, s0), (s0, 0), (0, s1), (s1, head)] {
        sigma[a] = b;
    }
    let fi = {
        let tmp: CombMap<()> = CombMap::new(alpha.clone(), sigma.clone(), vec![(); alpha.len()]);
        tmp.face_index()
    };
    let punctured: Vec<usize> = punctures.iter().map(|&x| fi[x]).collect();
    let mut labels = Vec::with_capacity(alpha.len());
    for x in 0..alpha.len() {
        let (role, start, over) = if x >= s0 {
            (StrandRole::Seam, x == s0, true)
        } else {
            let over = match d.port(x) {
                crate::diagram::Port::Crossing { over, .. } => over,
                _ => false,
            };
            (StrandRole::Knot, x % 2 == 0, over)
        };
        labels.push(RoleLabel { role, start, over, punctured: punctured.contains(&fi[x]) });
    }
    CombMap::new(alpha, sigma, labels)
}
