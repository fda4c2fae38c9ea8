//! Exhaustive small-grid sweeps of the finite-dimensional classifiers
//! against the definitional oracles, plus random property tests.

mod common;

use common::{all_matrices, grid_values};
use dirlat::fdlat::is_ideal;
use dirlat::latmaps::{
    adjoint, check_duality, hom_oracle, interval_oracle, is_injective, is_interval_preserving, is_lattice_hom,
    LatticeMap, Probe, DEFAULT_CAP,
};
use dirlat::ratcore::{rat, RatMat};
use proptest::prelude::*;

fn small_shapes() -> impl Iterator<Item = (usize, usize)> {
    (1..=3).flat_map(|r| (1..=3).map(move |c| (r, c))).filter(|&(r, c)| r * c < 9)
}

fn image_basis(m: &RatMat) -> Vec<dirlat::ratcore::RatVec> {
    (0..m.cols()).map(|c| m.column(c)).collect()
}

#[test]
fn duality_on_small_grids() {
    for (r, c) in small_shapes() {
        for m in all_matrices(r, c, &grid_values()) {
            let report = check_duality(&LatticeMap::matrix(m.clone()), DEFAULT_CAP).unwrap();
            assert!(report.passed(), "{m:?}\n{}", report.to_text());
        }
    }
}

#[test]
fn interval_preserving_agrees_with_vertex_oracle() {
    for (r, c) in small_shapes() {
        for m in all_matrices(r, c, &grid_values()) {
            let fast = is_interval_preserving(&LatticeMap::matrix(m.clone()), DEFAULT_CAP).unwrap();
            let slow = interval_oracle(&m, DEFAULT_CAP, Probe::new(1, 3)).unwrap();
            assert_eq!(fast.is_holds(), slow.leans_true(), "{m:?}");
        }
    }
}

#[test]
fn lattice_hom_agrees_with_sup_oracle() {
    for (r, c) in small_shapes() {
        for m in all_matrices(r, c, &grid_values()) {
            let t = LatticeMap::matrix(m.clone());
            let fast = is_lattice_hom(&t).unwrap();
            let slow = hom_oracle(&t, Probe::new(2, 200)).unwrap();
            assert_eq!(fast.is_holds(), slow.leans_true(), "{m:?}");
        }
    }
}

#[test]
fn hom_image_is_ideal_exactly_when_interval_preserving() {
    for (r, c) in small_shapes() {
        for m in all_matrices(r, c, &grid_values()) {
            let t = LatticeMap::matrix(m.clone());
            if !is_lattice_hom(&t).unwrap().is_holds() {
                continue;
            }
            let ip = is_interval_preserving(&t, DEFAULT_CAP).unwrap().is_holds();
            let ideal = is_ideal(r, &image_basis(&m)).unwrap().is_holds();
            assert_eq!(ip, ideal, "{m:?}");
        }
    }
}

#[test]
fn injective_interval_preserving_maps_are_homs() {
    for (r, c) in small_shapes() {
        for m in all_matrices(r, c, &grid_values()) {
            let t = LatticeMap::matrix(m.clone());
            if is_injective(&m) && is_interval_preserving(&t, DEFAULT_CAP).unwrap().is_holds() {
                assert!(is_lattice_hom(&t).unwrap().is_holds(), "{m:?}");
            }
        }
    }
}

fn nonnegative_matrix() -> impl Strategy<Value = RatMat> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec((0i64..4, 1i64..4), r * c).prop_map(move |cells| {
            let mut m = RatMat::zeros(r, c);
            for (k, (n, d)) in cells.into_iter().enumerate() {
                // about half the entries are zero so that sparse shapes occur
                let v = if n < 2 { rat(0, 1) } else { rat(n - 1, d) };
                m.set(k / c, k % c, v);
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn duality_on_random_matrices(m in nonnegative_matrix()) {
        let t = LatticeMap::matrix(m.clone());
        let ta = adjoint(&t).unwrap();
        prop_assert_eq!(
            is_lattice_hom(&t).unwrap().is_holds(),
            is_interval_preserving(&ta, DEFAULT_CAP).unwrap().is_holds()
        );
        prop_assert_eq!(
            is_interval_preserving(&t, DEFAULT_CAP).unwrap().is_holds(),
            is_lattice_hom(&ta).unwrap().is_holds()
        );
    }

    #[test]
    fn interval_preserving_agrees_on_random_matrices(m in nonnegative_matrix()) {
        let fast = is_interval_preserving(&LatticeMap::matrix(m.clone()), DEFAULT_CAP).unwrap();
        let slow = interval_oracle(&m, DEFAULT_CAP, Probe::new(5, 2)).unwrap();
        prop_assert_eq!(fast.is_holds(), slow.leans_true());
    }
}
