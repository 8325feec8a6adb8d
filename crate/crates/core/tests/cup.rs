mod common;

use polycup_core::{
    boundary_surface, class_product, compute_at_model, cup_matrix, fixtures, pairing_rank, rank_oracle, simplify,
    verify_structure, verify_structure_explicit, CupPairing, Diagonal, Error, Termination, VoxelImage,
};
use proptest::prelude::*;

struct Paths {
    betti_surface: [usize; 3],
    betti_polygons: [usize; 3],
    on_surface: CupPairing,
    on_polygons: CupPairing,
}

/// The pairing computed twice: Serre on the cubical surface, and the polygon
/// formula on the simplified complex. Both runs pass the structure checks.
fn both_paths(img: &VoxelImage, t: Termination) -> Paths {
    let s = boundary_surface(img);
    let ms = compute_at_model(&s);
    let on_surface = cup_matrix(&s, &ms, Diagonal::Serre).unwrap();
    assert!(verify_structure_explicit(&s, &ms, Diagonal::Serre, &on_surface).unwrap().passed());

    let p = simplify(&s, img, t).complex;
    let mp = compute_at_model(&p);
    let on_polygons = cup_matrix(&p, &mp, Diagonal::Polygon).unwrap();
    assert!(verify_structure_explicit(&p, &mp, Diagonal::Polygon, &on_polygons).unwrap().passed());
    Paths { betti_surface: ms.betti(), betti_polygons: mp.betti(), on_surface, on_polygons }
}

#[test]
fn torus_pairing() {
    for t in [Termination::Coplanar, Termination::MinEdges(10)] {
        let r = both_paths(&fixtures::torus(), t);
        for cp in [&r.on_surface, &r.on_polygons] {
            assert_eq!((cp.b1(), cp.b2()), (2, 1));
            assert_eq!(cp.triples(), [(0, 1, 0)]);
            assert_eq!(pairing_rank(cp), 2);
            assert_eq!(class_product(cp, 0, 1).unwrap().result, [0]);
            assert_eq!(class_product(cp, 1, 0).unwrap().result, [0]);
            let sq = class_product(cp, 1, 1).unwrap();
            assert!(sq.result.is_empty() && sq.structural_zero);
        }
    }
}

#[test]
fn double_torus_pairing() {
    let r = both_paths(&fixtures::double_torus(), Termination::Coplanar);
    for cp in [&r.on_surface, &r.on_polygons] {
        assert_eq!((cp.b1(), cp.b2()), (4, 1));
        assert_eq!(cp.rows().len(), 6);
        assert_eq!(pairing_rank(cp), 4);
        let report = verify_structure(cp);
        assert!(report.symmetric && report.squares_vanish);
        // a nondegenerate alternating form on Z₂⁴ pairs each class with something
        for i in 0..4 {
            assert!((0..4).any(|j| cp.value(i, j, 0)));
        }
    }
}

#[test]
fn disjoint_tori_and_spheres() {
    let r = both_paths(&fixtures::two_tori(), Termination::Coplanar);
    assert_eq!(r.betti_polygons, [2, 4, 2]);
    for cp in [&r.on_surface, &r.on_polygons] {
        assert_eq!(pairing_rank(cp), 4);
        // each class pairs nontrivially on exactly one of the two components
        for i in 0..4 {
            let hit: Vec<usize> = (0..2).filter(|&k| (0..4).any(|j| cp.value(i, j, k))).collect();
            assert_eq!(hit.len(), 1);
        }
    }

    let r = both_paths(&fixtures::solid_box([3, 2, 4]), Termination::Coplanar);
    for cp in [&r.on_surface, &r.on_polygons] {
        assert_eq!(cp.b1(), 0);
        assert!(cp.triples().is_empty());
        assert_eq!(pairing_rank(cp), 0);
        assert_eq!(class_product(cp, 0, 1), Err(Error::ClassIndex { index: 0, b1: 0 }));
    }
}

#[test]
fn pairing_needs_a_model_of_the_same_complex() {
    let img = fixtures::torus();
    let s = boundary_surface(&img);
    let p = simplify(&s, &img, Termination::Coplanar).complex;
    let ms = compute_at_model(&s);
    assert!(matches!(cup_matrix(&p, &ms, Diagonal::Polygon), Err(Error::ComplexMismatch { .. })));
    // Serre refuses polygons that are not unit squares
    let mp = compute_at_model(&p);
    assert!(matches!(cup_matrix(&p, &mp, Diagonal::Serre), Err(Error::NotASquare(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_images_agree_across_paths(seed in any::<u64>(), density in 0.2f64..0.8, coplanar in any::<bool>()) {
        let img = common::random_image(seed, 6, density);
        let t = if coplanar { Termination::Coplanar } else { Termination::MinEdges(8) };
        let r = both_paths(&img, t);
        prop_assert_eq!(r.betti_surface, rank_oracle(&boundary_surface(&img)));
        prop_assert_eq!(r.betti_surface, r.betti_polygons);
        prop_assert_eq!(pairing_rank(&r.on_surface), pairing_rank(&r.on_polygons));
    }
}
