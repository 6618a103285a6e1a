//! Knotoids on the sphere and the plane: diagrams, moves, invariants, the
//! knotoid-to-knot maps and the volume-bound arithmetic around them.

pub mod bounds;
pub mod bracket;
pub mod bridge;
pub mod catalog;
pub mod cmap;
pub mod constructions;
pub mod curves;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod maps;
pub mod pd;
pub mod shortcut;

pub use bounds::{Bound, CuspRect};
pub use bracket::{bracket, bracket_skein, jones};
pub use bridge::{BridgeClient, Cell};
pub use catalog::{lookup, CatalogEntry};
pub use cmap::CombMap;
pub use curves::{CurveDiagram, DartLabel, Strand, Visit};
pub use diagram::{
    is_weakly_prime, random_move_walk, simplify, KnotoidDiagram, MoveKind, MoveSite, Port, Side, Surface,
};
pub use error::{Error, ParseError, Result};
pub use laurent::LaurentPoly;
pub use maps::{closure, ClosureKind};
pub use pd::{LinkPD, PdComponent};
pub use shortcut::{height_upper_bound, shortest_shortcut, shortest_shortcuts, Shortcut, Step};
