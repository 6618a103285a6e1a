//! Knotoid-to-knot constructions: closures, gluing and doubling images.

mod belts;
mod closure;
mod images;
mod planar;
mod surface;

pub use closure::{closure, closure_curves, closure_with, ClosureKind};
pub use images::{
    planar_doubling_image, planar_gluing_image, spherical_doubling_image, spherical_gluing_image,
    spherical_gluing_image_with, virtual_closure, PlanarImage, SphericalImage,
};
pub use surface::{RoleLabel, StrandRole, SurfaceDiagram};
