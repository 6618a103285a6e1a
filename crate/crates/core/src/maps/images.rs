//! Gluing and doubling images of knotoids on the sphere and the plane.

use crate::constructions::product;
use crate::curves::{CurveDiagram, Strand, Visit};
use crate::diagram::{KnotoidDiagram, Surface};
use crate::error::{Error, Result};
use crate::pd::LinkPD;
use crate::shortcut::{shortest_shortcut, Shortcut};

use super::belts::belt_link;
use super::closure::{closure_curves, ClosureKind};
use super::planar::surgery_double;
use super::surface::{curves_from_map, glued_map, StrandRole, SurfaceDiagram};

/// Torus image together with its complement presented as a link in S^3.
#[derive(Clone, Debug)]
pub struct SphericalImage {
    pub surface: SurfaceDiagram,
    link: LinkPD,
}

impl SphericalImage {
    /// Components `knot`, `belt1`, `belt2`.
    pub fn as_link(&self) -> &LinkPD {
        &self.link
    }
}

/// Punctured-torus image with the double of its handlebody complement as a
/// framed link. The geometric volume of the image is the volume of the
/// surgered manifold divided by `volume_divisor`.
#[derive(Clone, Debug)]
pub struct PlanarImage {
    pub surface: SurfaceDiagram,
    surgery: LinkPD,
    pub volume_divisor: u32,
}

impl PlanarImage {
    /// Components `knot`, `knot_mirror`, then 0-framed `rail1`, `rail2`, ...
    pub fn as_surgery(&self) -> &LinkPD {
        &self.surgery
    }
}

fn need_surface(d: &KnotoidDiagram, s: Surface) -> Result<()> {
    if d.surface() != s {
        return Err(Error::SurfaceMismatch);
    }
    Ok(())
}

fn cut_of(sc: &Shortcut) -> Vec<(usize, bool)> {
    sc.steps.iter().map(|s| (s.edge, s.right_to_left)).collect()
}

fn link_of(curves: &CurveDiagram) -> LinkPD {
    LinkPD::from_curves(curves, &["knot", "belt1", "belt2"], &[]).expect("belt link is closed")
}

/// The knot with every shortcut crossing made virtual: on the torus the
/// closing arc runs once through the gluing annulus instead.
pub fn virtual_closure(d: &KnotoidDiagram) -> Result<SurfaceDiagram> {
    need_surface(d, Surface::Sphere)?;
    let sc = shortest_shortcut(d);
    let n = d.crossing_count();
    let closed = closure_curves(d, &sc, ClosureKind::Over);
    let mut knot: Vec<Visit> = closed.strands[0].visits.iter().copied().filter(|v| v.crossing < n).collect();
    knot.push(Visit::new(n, false));
    let mut signs = closed.signs[..n].to_vec();
    signs.push(1);
    let curves = CurveDiagram::new(vec![Strand::closed(knot), Strand::closed(vec![Visit::new(n, true)])], signs)?;
    SurfaceDiagram::new(curves, vec![StrandRole::Knot, StrandRole::Seam], 1, vec![], cut_of(&sc))
}

fn gluing_surface(d: &KnotoidDiagram, punctures: &[usize], sc: &Shortcut) -> Result<SurfaceDiagram> {
    let (curves, roles) = curves_from_map(&glued_map(d, punctures))?;
    SurfaceDiagram::new(curves, roles, 1, punctures.to_vec(), cut_of(sc))
}

/// Endpoint circles of the spherical diagram glued into a torus.
pub fn spherical_gluing_image(d: &KnotoidDiagram) -> Result<SphericalImage> {
    spherical_gluing_image_with(d, &shortest_shortcut(d))
}

/// The gluing image built around a given shortcut; any shortcut gives the
/// same torus diagram and an isometric link complement.
pub fn spherical_gluing_image_with(d: &KnotoidDiagram, sc: &Shortcut) -> Result<SphericalImage> {
    need_surface(d, Surface::Sphere)?;
    let surface = gluing_surface(d, &[], sc)?;
    Ok(SphericalImage { surface, link: link_of(&belt_link(d, sc).curves) })
}

/// `d` followed by its reflected reverse: the arc of the reflected copy
/// runs from the head of `d` back to its tail.
fn doubled_product(d: &KnotoidDiagram) -> Result<KnotoidDiagram> {
    let s = d.on_surface(Surface::Sphere, None)?.with_orientation(true);
    product(&s, &s.reflect().reverse())
}

/// Torus diagram of the doubled arc with both gluing circles as seams.
/// Punctures are darts of this diagram.
fn doubling_surface(
    d: &KnotoidDiagram,
    p: &KnotoidDiagram,
    punctures: &[usize],
    sc: &Shortcut,
) -> Result<SurfaceDiagram> {
    let m = p.crossing_count();
    let mut knot = p.walk().to_vec();
    knot.insert(d.walk().len(), Visit::new(m, false));
    knot.push(Visit::new(m + 1, false));
    let mut signs = p.signs().to_vec();
    signs.extend([1, 1]);
    let seam = |x| Strand::closed(vec![Visit::new(x, true)]);
    let curves = CurveDiagram::new(vec![Strand::closed(knot), seam(m), seam(m + 1)], signs)?;
    // the junction seam splits edge l; later edges move up by one
    let cut = cut_of(sc).into_iter().map(|(e, r)| (if e > d.walk().len() { e + 1 } else { e }, r)).collect();
    SurfaceDiagram::new(curves, vec![StrandRole::Knot, StrandRole::Seam, StrandRole::Seam], 1, punctures.to_vec(), cut)
}

pub fn spherical_doubling_image(d: &KnotoidDiagram) -> Result<SphericalImage> {
    need_surface(d, Surface::Sphere)?;
    let p = doubled_product(d)?;
    let sc = shortest_shortcut(&p);
    let surface = doubling_surface(d, &p, &[], &sc)?;
    Ok(SphericalImage { surface, link: link_of(&belt_link(&p, &sc).curves) })
}

fn exterior(d: &KnotoidDiagram) -> Result<usize> {
    d.exterior_dart().ok_or_else(|| Error::invalid("planar diagram without an exterior face"))
}

/// Endpoint circles glued, the point at infinity kept as a puncture.
pub fn planar_gluing_image(d: &KnotoidDiagram) -> Result<PlanarImage> {
    need_surface(d, Surface::Plane)?;
    let x = exterior(d)?;
    let s = d.on_surface(Surface::Sphere, None)?;
    let sc = shortest_shortcut(&s);
    let surface = gluing_surface(&s, &[x], &sc)?;
    let surgery = surgery_double(&s, &sc, &[x])?;
    Ok(PlanarImage { surface, surgery, volume_divisor: 2 })
}

/// Reflected doubling on the plane: a twice-punctured torus.
pub fn planar_doubling_image(d: &KnotoidDiagram) -> Result<PlanarImage> {
    need_surface(d, Surface::Plane)?;
    let x = exterior(d)?;
    let p = doubled_product(d)?;
    // the reflected reverse starts at the head of d; its darts follow d's
    let l = d.walk().len();
    let y = exterior(&d.reflect().reverse())?;
    let sc = shortest_shortcut(&p);
    // in the seamed diagram the second copy sits one edge further on
    let surface = doubling_surface(d, &p, &[x, y + 2 * l + 2], &sc)?;
    let surgery = surgery_double(&p, &sc, &[x, y + 2 * l])?;
    Ok(PlanarImage { surface, surgery, volume_divisor: 4 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{plane_catalog, sphere_catalog};
    use crate::constructions::{integer_gluing_components, integer_knotoid};

    fn face_degrees(s: &SurfaceDiagram) -> Vec<usize> {
        let mut v: Vec<usize> = s.map().faces().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn virtual_closure_is_the_gluing_torus() {
        for e in sphere_catalog() {
            let v = virtual_closure(&e.diagram).unwrap();
            let g = spherical_gluing_image(&e.diagram).unwrap();
            assert!(v.is_isomorphic(&g.surface), "{}", e.name);
            assert_eq!(v.seam_intersections(), 1);
            assert_eq!(v.dual_cut.len(), height_of(&e.diagram));
            assert_eq!(v.classical_crossings(), e.crossing_count());
        }
    }

    fn height_of(d: &KnotoidDiagram) -> usize {
        crate::shortcut::height_upper_bound(d)
    }

    #[test]
    fn genus_and_punctures() {
        for e in sphere_catalog() {
            let g = spherical_gluing_image(&e.diagram).unwrap();
            let dbl = spherical_doubling_image(&e.diagram).unwrap();
            for s in [&g.surface, &dbl.surface] {
                assert_eq!((s.genus, s.punctures.len()), (1, 0), "{}", e.name);
                assert_eq!(s.euler_characteristic(), 0);
                assert_eq!(s.knot_component_count(), 1);
            }
            assert_eq!(dbl.surface.classical_crossings(), 2 * e.crossing_count());
            assert_eq!(g.as_link().component_count(), 3);
            assert_eq!(dbl.as_link().component_count(), 3);
        }
        for e in plane_catalog() {
            let g = planar_gluing_image(&e.diagram).unwrap();
            let dbl = planar_doubling_image(&e.diagram).unwrap();
            assert_eq!((g.surface.genus, g.surface.punctures.len()), (1, 1), "{}", e.name);
            assert_eq!((dbl.surface.genus, dbl.surface.punctures.len()), (1, 2), "{}", e.name);
            assert_eq!(g.surface.euler_characteristic(), -1);
            assert_eq!(dbl.surface.euler_characteristic(), -2);
            assert_eq!((g.volume_divisor, dbl.volume_divisor), (2, 4));
        }
    }

    #[test]
    fn doubling_ignores_which_copy_comes_first() {
        for e in sphere_catalog() {
            let a = doubled_product(&e.diagram).unwrap().with_orientation(false);
            let b = doubled_product(&e.diagram.reflect()).unwrap().with_orientation(false);
            assert!(a.is_isomorphic(&b), "{}", e.name);
            let sa = spherical_doubling_image(&e.diagram).unwrap().surface;
            let sb = spherical_doubling_image(&e.diagram.reflect()).unwrap().surface;
            assert_eq!(face_degrees(&sa), face_degrees(&sb), "{}", e.name);
        }
    }

    #[test]
    fn wrong_surface_is_rejected() {
        let s = KnotoidDiagram::parse("sphere; C1+o C2+u C1+u C2+o").unwrap();
        let p = s.on_surface(Surface::Plane, Some(0)).unwrap();
        assert!(matches!(planar_gluing_image(&s), Err(Error::SurfaceMismatch)));
        assert!(matches!(spherical_gluing_image(&p), Err(Error::SurfaceMismatch)));
        assert!(virtual_closure(&p).is_err());
    }

    #[test]
    fn integer_parity() {
        for n in 1..=8 {
            let expect = if n % 2 == 0 { 1 } else { 2 };
            assert_eq!(integer_gluing_components(n), expect);
            match integer_knotoid(n) {
                Ok(d) => {
                    assert_eq!(n % 2, 0);
                    let g = spherical_gluing_image(&d).unwrap();
                    assert_eq!(g.surface.knot_component_count(), 1);
                    assert_eq!(g.as_link().component_count(), 3);
                }
                Err(e) => assert!(n % 2 == 1 && matches!(e, Error::TwoComponents(_)), "{n}: {e}"),
            }
        }
    }
}
