//! Reidemeister moves away from the endpoints.
//!
//! Sites are addressed by walk data: creation moves name edges and the side
//! of the edge they act on, deletion moves and R3 name a dart of the face
//! they collapse. All of these survive serialization because codes keep the
//! walk order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normalize_walk, KnotoidDiagram, Port, Surface};
use crate::curves::Visit;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// Kink on edge `edge`, its loop bulging to `side`.
    R1Plus { edge: usize, side: Side, first_over: bool },
    /// Remove the kink at a crossing whose two visits are consecutive.
    R1Minus { crossing: usize },
    /// Push a finger from `finger` across the face to `target`. Both name an
    /// edge and the side of it facing the shared face. `finger_first`
    /// decides the order along the edge when both lie on one edge.
    R2Plus { finger: (usize, Side), target: (usize, Side), finger_over: bool, finger_first: bool },
    /// Collapse the bigon face containing `face_dart`.
    R2Minus { face_dart: usize },
    /// Pass a strand across the triangle face containing `face_dart`.
    R3 { face_dart: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Plus { .. } => MoveKind::R1Plus,
            MoveSite::R1Minus { .. } => MoveKind::R1Minus,
            MoveSite::R2Plus { .. } => MoveKind::R2Plus,
            MoveSite::R2Minus { .. } => MoveKind::R2Minus,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

fn side_dart(edge: usize, side: Side) -> usize {
    match side {
        Side::Right => 2 * edge,
        Side::Left => 2 * edge + 1,
    }
}

/// Dart of a port in a walk that may still carry stale crossing ids.
fn locate(walk: &[Visit], port: Port) -> Option<usize> {
    match port {
        Port::Tail => Some(0),
        Port::Head => Some(2 * walk.len() + 1),
        Port::Crossing { crossing, over, incoming } => {
            let p = walk.iter().position(|v| v.crossing == crossing && v.over == over)?;
            Some(if incoming { 2 * p + 1 } else { 2 * p + 2 })
        }
    }
}

impl KnotoidDiagram {
    /// Builds the result of a move from a raw walk in which the crossings
    /// `involved` were created, deleted or rearranged. On the plane the
    /// exterior follows a corner at an untouched vertex.
    fn finish(&self, walk: Vec<Visit>, signs: Vec<i8>, involved: &[usize]) -> Result<Self> {
        let ext = match self.surface {
            Surface::Sphere => None,
            Surface::Plane => {
                let fi = self.face_index();
                let x = fi[self.exterior.expect("plane has exterior")];
                let anchor = (0..self.dart_count())
                    .filter(|&d| fi[d] == x)
                    .map(|d| self.port(d))
                    .find(|p| match p {
                        Port::Crossing { crossing, .. } => !involved.contains(crossing),
                        _ => true,
                    })
                    .ok_or_else(|| Error::ExteriorFace("no untouched vertex on the exterior face".into()))?;
                Some(locate(&walk, anchor).expect("anchor survives the move"))
            }
        };
        let (walk, signs) = normalize_walk(&walk, &signs)?;
        let mut out = KnotoidDiagram::new(walk, signs, self.surface, ext)?;
        out.oriented = self.oriented;
        Ok(out)
    }

    fn face_of_site(&self, face_dart: usize, size: usize) -> Result<Vec<usize>> {
        if face_dart >= self.dart_count() {
            return Err(Error::PatternMismatch(format!("dart {face_dart} out of range")));
        }
        let faces = self.faces();
        let fi = self.face_index();
        let face = faces[fi[face_dart]].clone();
        if face.contains(&0) || face.contains(&self.head_dart()) {
            return Err(Error::ForbiddenMove("the face contains an endpoint".into()));
        }
        if face.len() != size {
            return Err(Error::PatternMismatch(format!("face has {} sides, expected {size}", face.len())));
        }
        if self.exterior.map(|x| fi[x]) == Some(fi[face_dart]) {
            return Err(Error::ExteriorFace("the pattern face is the exterior".into()));
        }
        Ok(face)
    }

    pub fn apply_move(&self, site: MoveSite) -> Result<Self> {
        let n = self.crossing_count();
        let l = self.walk.len();
        match site {
            MoveSite::R1Plus { edge, side, first_over } => {
                if edge > l {
                    return Err(Error::PatternMismatch(format!("edge {edge} out of range")));
                }
                let mut walk = self.walk.clone();
                walk.splice(edge..edge, [Visit::new(n, first_over), Visit::new(n, !first_over)]);
                let mut signs = self.signs.clone();
                signs.push(if (side == Side::Left) != first_over { 1 } else { -1 });
                self.finish(walk, signs, &[])
            }
            MoveSite::R1Minus { crossing } => {
                if crossing >= n {
                    return Err(Error::PatternMismatch(format!("no crossing {crossing}")));
                }
                let [a, b] = self.positions()[crossing];
                let (p, q) = (a.min(b), a.max(b));
                if q != p + 1 {
                    return Err(Error::PatternMismatch(format!("crossing {crossing} is not a kink")));
                }
                let fi = self.face_index();
                let loop_edge = p + 1;
                let mono = [2 * loop_edge, 2 * loop_edge + 1]
                    .into_iter()
                    .find(|&d| self.map().phi(d) == d)
                    .expect("a kink bounds a monogon");
                if self.exterior.map(|x| fi[x]) == Some(fi[mono]) {
                    return Err(Error::ExteriorFace("the kink loop contains infinity".into()));
                }
                let mut walk = self.walk.clone();
                walk.drain(p..=q);
                self.finish(walk, self.signs.clone(), &[crossing])
            }
            MoveSite::R2Plus { finger, target, finger_over, finger_first } => {
                let (i, si) = finger;
                let (j, sj) = target;
                if i > l || j > l {
                    return Err(Error::PatternMismatch("edge out of range".into()));
                }
                let fi = self.face_index();
                if fi[side_dart(i, si)] != fi[side_dart(j, sj)] {
                    return Err(Error::PatternMismatch("the two sides do not share a face".into()));
                }
                let (x, y) = (n, n + 1);
                let fpair = [Visit::new(x, finger_over), Visit::new(y, finger_over)];
                let tpair = if si != sj {
                    [Visit::new(x, !finger_over), Visit::new(y, !finger_over)]
                } else {
                    [Visit::new(y, !finger_over), Visit::new(x, !finger_over)]
                };
                let mut walk = self.walk.clone();
                if i == j {
                    let mut both = Vec::with_capacity(4);
                    if finger_first {
                        both.extend(fpair);
                        both.extend(tpair);
                    } else {
                        both.extend(tpair);
                        both.extend(fpair);
                    }
                    walk.splice(i..i, both);
                } else if i > j {
                    walk.splice(i..i, fpair);
                    walk.splice(j..j, tpair);
                } else {
                    walk.splice(j..j, tpair);
                    walk.splice(i..i, fpair);
                }
                let sx: i8 = if finger_over == (sj == Side::Left) { 1 } else { -1 };
                let mut signs = self.signs.clone();
                signs.extend([sx, -sx]);
                self.finish(walk, signs, &[])
            }
            MoveSite::R2Minus { face_dart } => {
                let face = self.face_of_site(face_dart, 2)?;
                let (e1, e2) = (face[0] / 2, face[1] / 2);
                if e1.abs_diff(e2) < 2 {
                    return Err(Error::PatternMismatch("bigon edges share a visit".into()));
                }
                let w = &self.walk;
                let (a1, b1, a2, b2) = (w[e1 - 1], w[e1], w[e2 - 1], w[e2]);
                let same = |u: Visit, v: Visit| u.crossing == v.crossing;
                let pairs_match = (same(a1, a2) && same(b1, b2)) || (same(a1, b2) && same(b1, a2));
                if a1.crossing == b1.crossing || !pairs_match {
                    return Err(Error::PatternMismatch("not a bigon between two crossings".into()));
                }
                if a1.over != b1.over || a2.over != b2.over || a1.over == a2.over {
                    return Err(Error::PatternMismatch("bigon is alternating".into()));
                }
                let mut walk = self.walk.clone();
                let mut del = [e1 - 1, e1, e2 - 1, e2];
                del.sort_unstable();
                for &p in del.iter().rev() {
                    walk.remove(p);
                }
                self.finish(walk, self.signs.clone(), &[a1.crossing, b1.crossing])
            }
            MoveSite::R3 { face_dart } => {
                let face = self.face_of_site(face_dart, 3)?;
                let edges: Vec<usize> = face.iter().map(|d| d / 2).collect();
                let mut slots: Vec<usize> = edges.iter().flat_map(|&e| [e - 1, e]).collect();
                slots.sort_unstable();
                slots.dedup();
                if slots.len() != 6 {
                    return Err(Error::PatternMismatch("triangle edges share visits".into()));
                }
                let w = &self.walk;
                let mut xs: Vec<usize> = slots.iter().map(|&p| w[p].crossing).collect();
                xs.sort_unstable();
                xs.dedup();
                if xs.len() != 3 || edges.iter().any(|&e| w[e - 1].crossing == w[e].crossing) {
                    return Err(Error::PatternMismatch("not a triangle of three crossings".into()));
                }
                if !edges.iter().any(|&e| w[e - 1].over == w[e].over) {
                    return Err(Error::PatternMismatch("triangle is alternating".into()));
                }
                let mut walk = self.walk.clone();
                for &e in &edges {
                    walk.swap(e - 1, e);
                }
                self.finish(walk, self.signs.clone(), &xs)
            }
        }
    }

    /// Creation sites.
    pub fn creation_sites(&self, kind: MoveKind) -> Vec<MoveSite> {
        let mut out = Vec::new();
        match kind {
            MoveKind::R1Plus => {
                for edge in 0..self.edge_count() {
                    for side in [Side::Left, Side::Right] {
                        for first_over in [false, true] {
                            out.push(MoveSite::R1Plus { edge, side, first_over });
                        }
                    }
                }
            }
            MoveKind::R2Plus => {
                let fi = self.face_index();
                let faces = self.faces();
                for f in 0..faces.len() {
                    let sides: Vec<(usize, Side)> =
                        faces[f].iter().map(|&d| (d / 2, if d % 2 == 0 { Side::Right } else { Side::Left })).collect();
                    debug_assert!(sides.iter().all(|&(e, s)| fi[side_dart(e, s)] == f));
                    for &a in &sides {
                        for &b in &sides {
                            let orders: &[bool] = if a.0 == b.0 { &[false, true] } else { &[false] };
                            for &finger_first in orders {
                                for finger_over in [false, true] {
                                    out.push(MoveSite::R2Plus { finger: a, target: b, finger_over, finger_first });
                                }
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Every site where `kind` applies.
    pub fn move_sites(&self, kind: MoveKind) -> Vec<MoveSite> {
        match kind {
            MoveKind::R1Plus | MoveKind::R2Plus => self.creation_sites(kind),
            MoveKind::R1Minus => (0..self.crossing_count())
                .map(|crossing| MoveSite::R1Minus { crossing })
                .filter(|&s| self.apply_move(s).is_ok())
                .collect(),
            MoveKind::R2Minus | MoveKind::R3 => {
                let size = if kind == MoveKind::R2Minus { 2 } else { 3 };
                self.faces()
                    .iter()
                    .filter(|f| f.len() == size)
                    .map(|f| {
                        if kind == MoveKind::R2Minus {
                            MoveSite::R2Minus { face_dart: f[0] }
                        } else {
                            MoveSite::R3 { face_dart: f[0] }
                        }
                    })
                    .filter(|&s| self.apply_move(s).is_ok())
                    .collect()
            }
        }
    }

    pub fn legal_moves(&self) -> Vec<MoveSite> {
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3]
            .into_iter()
            .flat_map(|k| self.move_sites(k))
            .collect()
    }
}

const ALL_KINDS: [MoveKind; 5] =
    [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];

/// Seeded random sequence of moves. Each step picks a kind uniformly among
/// those with a site, then a site uniformly. Steps that would push the
/// crossing count above `max_crossings` are skipped.
pub fn random_move_walk(d: &KnotoidDiagram, seed: u64, n_steps: usize, max_crossings: usize) -> KnotoidDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    for _ in 0..n_steps {
        let options: Vec<(MoveKind, Vec<MoveSite>)> =
            ALL_KINDS.iter().map(|&k| (k, cur.move_sites(k))).filter(|(_, s)| !s.is_empty()).collect();
        let (kind, sites) = options.choose(&mut rng).expect("R1+ is always available");
        let grow = match kind {
            MoveKind::R1Plus => 1,
            MoveKind::R2Plus => 2,
            _ => 0,
        };
        let site = sites[rng.gen_range(0..sites.len())];
        if cur.crossing_count() + grow > max_crossings {
            continue;
        }
        if let Ok(next) = cur.apply_move(site) {
            cur = next;
        }
    }
    cur
}

/// Greedy R1-/R2- simplification until neither applies.
pub fn simplify(d: &KnotoidDiagram) -> KnotoidDiagram {
    let mut cur = d.clone();
    loop {
        let site = cur.move_sites(MoveKind::R1Minus).into_iter().chain(cur.move_sites(MoveKind::R2Minus)).next();
        match site {
            Some(s) => cur = cur.apply_move(s).expect("enumerated site applies"),
            None => return cur,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(code: &str) -> KnotoidDiagram {
        KnotoidDiagram::parse(code).unwrap()
    }

    #[test]
    fn r1_loop_lands_on_requested_side() {
        let d = k("sphere; C1-o C2-u C1-u C2-o");
        for edge in 0..d.edge_count() {
            for first_over in [false, true] {
                for (side, dart) in [(Side::Left, 2 * edge + 3), (Side::Right, 2 * edge + 2)] {
                    let r = d.apply_move(MoveSite::R1Plus { edge, side, first_over }).unwrap();
                    let m = r.map();
                    assert_eq!(m.phi(dart), dart, "edge {edge} side {side:?}");
                }
            }
        }
    }

    #[test]
    fn r1_round_trip() {
        let d = k("sphere; C1-o C2-u C1-u C2-o");
        let r = d.apply_move(MoveSite::R1Plus { edge: 2, side: Side::Left, first_over: true }).unwrap();
        assert_eq!(r.crossing_count(), 3);
        let c = r.walk()[2].crossing;
        let back = r.apply_move(MoveSite::R1Minus { crossing: c }).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn every_creation_site_is_planar() {
        for code in ["sphere;", "sphere; C1-o C2-u C1-u C2-o", "plane; C1+o C1+u; exterior=1"] {
            let d = k(code);
            for s in d.creation_sites(MoveKind::R2Plus).into_iter().chain(d.creation_sites(MoveKind::R1Plus)) {
                let r = d.apply_move(s).unwrap_or_else(|e| panic!("{code} {s:?}: {e}"));
                assert_eq!(r.surface(), d.surface());
            }
        }
    }

    #[test]
    fn r2_round_trip() {
        let d = k("sphere; C1-o C2-u C1-u C2-o");
        for s in d.creation_sites(MoveKind::R2Plus) {
            let r = d.apply_move(s).unwrap();
            let undo = r.move_sites(MoveKind::R2Minus);
            assert!(undo.iter().any(|&u| r.apply_move(u).unwrap().is_isomorphic(&d)), "{s:?} gave {r} with no undo");
        }
    }

    #[test]
    fn forbidden_move_is_rejected() {
        // trivial knotoid: its only face holds both endpoints
        let d = KnotoidDiagram::trivial(Surface::Sphere);
        assert!(matches!(d.apply_move(MoveSite::R2Minus { face_dart: 0 }), Err(Error::ForbiddenMove(_))));
        // an R2 finger across the tail edge can be created but not pushed
        // off over the endpoint
        let r = d
            .apply_move(MoveSite::R2Plus {
                finger: (0, Side::Left),
                target: (0, Side::Right),
                finger_over: true,
                finger_first: true,
            })
            .unwrap();
        for s in r.legal_moves() {
            if let MoveSite::R2Minus { face_dart } | MoveSite::R3 { face_dart } = s {
                let f = &r.faces()[r.face_index()[face_dart]];
                assert!(!f.contains(&0) && !f.contains(&r.head_dart()));
            }
        }
    }

    #[test]
    fn walk_is_deterministic() {
        let d = k("sphere; C1-o C2-u C1-u C2-o");
        assert_eq!(random_move_walk(&d, 0, 0, 8), d);
        let a = random_move_walk(&d, 7, 40, 8);
        let b = random_move_walk(&d, 7, 40, 8);
        assert_eq!(a, b);
        assert!(a.crossing_count() <= 8);
    }

    #[test]
    fn plane_walk_keeps_surface() {
        let d = k("plane; C1+o C1+u; exterior=1");
        for seed in 0..5 {
            let r = random_move_walk(&d, seed, 30, 7);
            assert_eq!(r.surface(), Surface::Plane);
            assert!(r.exterior_face().is_some());
        }
    }

    #[test]
    fn exterior_kink_cannot_be_removed() {
        let d = k("plane; C1+o C1+u; exterior=1");
        assert!(matches!(d.apply_move(MoveSite::R1Minus { crossing: 0 }), Err(Error::ExteriorFace(_))));
        let s = k("sphere; C1+o C1+u");
        assert_eq!(s.apply_move(MoveSite::R1Minus { crossing: 0 }).unwrap().crossing_count(), 0);
    }

    #[test]
    fn r3_is_an_involution() {
        let d = k("sphere; C1-o C2-u C1-u C2-o");
        let mut found = 0;
        for seed in 0..40 {
            let r = random_move_walk(&d, seed, 12, 7);
            for s in r.move_sites(MoveKind::R3) {
                let t = r.apply_move(s).unwrap();
                let back = t.move_sites(MoveKind::R3);
                assert!(back.iter().any(|&b| t.apply_move(b).unwrap().is_isomorphic(&r)));
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
