use proptest::prelude::*;

use knotoidlab::bounds::{dehn_filling_lower_bound, rect_slope_length, two_bridge_lower_bound, Bound, CuspRect, V_TET};
use knotoidlab::bridge::{BridgeRequest, Filling, Task};
use knotoidlab::catalog::{plane_catalog, sphere_catalog};
use knotoidlab::constructions::RationalCode;
use knotoidlab::invariants::closure_jones;
use knotoidlab::maps::{spherical_gluing_image, virtual_closure};
use knotoidlab::{random_move_walk, ClosureKind, KnotoidDiagram, LaurentPoly, LinkPD, MoveKind, Surface};

fn entries() -> Vec<KnotoidDiagram> {
    sphere_catalog().into_iter().chain(plane_catalog()).map(|e| e.diagram).collect()
}

fn walked(i: usize, seed: u64, steps: usize) -> KnotoidDiagram {
    let all = entries();
    let d = &all[i % all.len()];
    random_move_walk(d, seed, steps, d.crossing_count() + 3)
}

fn bar(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        out = out + LaurentPoly::monomial(c, -e);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closures_survive_moves(i in 0usize..64, seed in any::<u64>(), steps in 1usize..16) {
        let all = entries();
        let d = &all[i % all.len()];
        let w = random_move_walk(d, seed, steps, d.crossing_count() + 3);
        for k in [ClosureKind::Under, ClosureKind::Over] {
            prop_assert_eq!(closure_jones(&w, k).unwrap(), closure_jones(d, k).unwrap());
        }
    }

    #[test]
    fn r2_creation_can_be_undone(i in 0usize..64, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = walked(i, seed, 4);
        let sites = d.creation_sites(MoveKind::R2Plus);
        prop_assume!(!sites.is_empty());
        let r = d.apply_move(*pick.get(&sites)).unwrap();
        prop_assert_eq!(r.crossing_count(), d.crossing_count() + 2);
        let undone = r.move_sites(MoveKind::R2Minus).into_iter().any(|u| r.apply_move(u).unwrap().is_isomorphic(&d));
        prop_assert!(undone);
    }

    #[test]
    fn r1_creation_can_be_undone(i in 0usize..64, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = walked(i, seed, 4);
        let sites = d.creation_sites(MoveKind::R1Plus);
        prop_assume!(!sites.is_empty());
        let r = d.apply_move(*pick.get(&sites)).unwrap();
        let undone = r.move_sites(MoveKind::R1Minus).into_iter().any(|u| r.apply_move(u).unwrap().is_isomorphic(&d));
        prop_assert!(undone);
    }

    #[test]
    fn codes_round_trip(i in 0usize..64, seed in any::<u64>(), steps in 0usize..12) {
        let d = walked(i, seed, steps);
        let back = KnotoidDiagram::parse(&d.to_code()).unwrap();
        prop_assert!(back.is_isomorphic(&d));
        prop_assert_eq!(d.reverse().reverse(), d.clone());
        prop_assert_eq!(back.surface(), d.surface());
    }

    #[test]
    fn mirror_swaps_closures(i in 0usize..64, seed in any::<u64>()) {
        let d = walked(i, seed, 6);
        let m = d.mirror();
        prop_assert_eq!(closure_jones(&m, ClosureKind::Under).unwrap(), bar(&closure_jones(&d, ClosureKind::Over).unwrap()));
        prop_assert_eq!(closure_jones(&m, ClosureKind::Over).unwrap(), bar(&closure_jones(&d, ClosureKind::Under).unwrap()));
    }

    #[test]
    fn virtual_closure_tracks_moves(i in 0usize..33, seed in any::<u64>(), steps in 0usize..10) {
        let d = walked(i, seed, steps);
        prop_assume!(d.surface() == Surface::Sphere);
        let g = spherical_gluing_image(&d).unwrap();
        prop_assert!(virtual_closure(&d).unwrap().is_isomorphic(&g.surface));
        prop_assert_eq!(g.as_link().component_count(), 3);
        let text = g.as_link().to_string();
        let parsed: LinkPD = text.parse().unwrap();
        prop_assert_eq!(parsed.to_string(), text);
    }
}

proptest! {
    #[test]
    fn dehn_bound_is_monotone(base in 0.1f64..50.0, l in 6.3f64..200.0, dl in 0.0f64..50.0, db in 0.0f64..10.0) {
        let b = |base: f64, l: f64| dehn_filling_lower_bound(base, &[l]).unwrap().value().unwrap();
        prop_assert!(b(base, l) <= b(base, l + dl));
        prop_assert!(b(base, l) <= b(base + db, l));
        prop_assert!(b(base, l) < base);
        prop_assert!(b(base, 1e9) > base * (1.0 - 1e-9));
    }

    #[test]
    fn dehn_bound_uses_the_shortest_slope(base in 0.1f64..50.0, mut ls in prop::collection::vec(0.1f64..100.0, 1..6)) {
        let got = dehn_filling_lower_bound(base, &ls).unwrap();
        ls.sort_by(f64::total_cmp);
        let shortest = dehn_filling_lower_bound(base, &ls[..1]).unwrap();
        prop_assert_eq!(got, shortest);
        prop_assert_eq!(ls[0] <= 2.0 * std::f64::consts::PI, got == Bound::Inapplicable);
    }

    #[test]
    fn rect_slopes_grow(m in 0.1f64..20.0, l in 0.1f64..20.0, n in 1u64..1000) {
        let c = CuspRect::rect(m, l).unwrap();
        let a = rect_slope_length(&c, n).unwrap();
        prop_assert!(a < rect_slope_length(&c, n + 1).unwrap());
        prop_assert!(a >= l * n as f64);
    }

    #[test]
    fn two_bridge_is_affine(tw in 1u64..10_000) {
        let step = two_bridge_lower_bound(tw + 1).unwrap() - two_bridge_lower_bound(tw).unwrap();
        prop_assert!((step - 2.0 * V_TET).abs() < 1e-9);
    }

    #[test]
    fn rational_codes_round_trip(v in prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 1..6)) {
        let c = RationalCode(v);
        prop_assert_eq!(c.to_string().parse::<RationalCode>().unwrap(), c);
    }

    #[test]
    fn bridge_requests_round_trip(id in any::<u64>(), p in -50i64..50, q in -50i64..50, label in "[a-z][a-z0-9]{0,6}") {
        let req = BridgeRequest {
            id,
            task: Task::CuspShapes,
            pd: "X[1,4,2,3] X[3,2,4,1]; comp=k:1-4".into(),
            pd2: None,
            fillings: vec![Filling { component: label, p, q }],
            precision: Some(53),
        };
        let text = serde_json::to_string(&req).unwrap();
        prop_assert!(!text.contains('\n'));
        prop_assert_eq!(serde_json::from_str::<BridgeRequest>(&text).unwrap(), req);
    }
}
