//! Invariants of the maps, the symmetry action, membership and the matrix
//! format, checked on random inputs.

use conelab::catalog::build;
use conelab::exactla::IntVec;
use conelab::harness::Lab;
use conelab::matrix::{read_matrix, write_matrix};
use conelab::spaces::{lift, p_inv, p_map, q_map_quasi, symmetrize, wsym_to_sym, Lattice, Space, SpaceKind};
use conelab::symmetry::{act, parse_group_element};
use num_bigint::BigInt;
use proptest::prelude::*;

fn v(xs: &[i64]) -> IntVec {
    IntVec::from_i64s(xs)
}

fn wsym(n: usize) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(-6i64..=6, n * (n + 1) / 2).prop_map(|x| v(&x))
}

fn transpositions(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1..=n, 1..=n), 0..5)
}

/// Applies the transpositions one after another.
fn permute(v: &IntVec, ts: &[(usize, usize)], space: Space) -> IntVec {
    ts.iter().filter(|(a, b)| a != b).fold(v.clone(), |acc, (a, b)| {
        let g = parse_group_element(&format!("({a} {b})"), space.n).unwrap();
        act(&g, &acc, space).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_inverse_undoes_p(x in wsym(5)) {
        let p = p_map(&x, 5, Lattice::Doubled).unwrap();
        prop_assert_eq!(p_inv(&p, 5).unwrap(), x.scale(&BigInt::from(2)));
    }

    #[test]
    fn q_then_symmetrize_recovers_distances(x in wsym(4)) {
        let q = q_map_quasi(&x, 4, Lattice::Doubled).unwrap();
        let d = wsym_to_sym(&x, 4).unwrap();
        // wsym_to_sym puts the weights on the new point 0; keep the old pairs
        let s = Space::new(SpaceKind::Sym, 5);
        let pairs: Vec<BigInt> = s
            .coords()
            .into_iter()
            .zip(d.0)
            .filter(|(c, _)| !matches!(c, conelab::Coord::Pair(_, 1)))
            .map(|(_, x)| x * 2)
            .collect();
        prop_assert_eq!(symmetrize(&q, 4).unwrap(), IntVec(pairs));
    }

    #[test]
    fn lifting_keeps_the_old_block(p in prop::collection::vec(-5i64..=5, 10)) {
        let p = v(&p);
        let up = lift(&p, 4).unwrap();
        let small = Space::new(SpaceKind::Psym, 4);
        let big = Space::new(SpaceKind::Psym, 5);
        for (k, c) in small.coords().into_iter().enumerate() {
            let shifted = match c {
                conelab::Coord::Pair(i, j) => conelab::Coord::Pair(i + 1, j + 1),
                conelab::Coord::Diag(i) => conelab::Coord::Diag(i + 1),
                other => other,
            };
            prop_assert_eq!(&up.0[big.idx(shifted)], &p.0[k]);
        }
    }

    #[test]
    fn membership_agrees_with_facets(x in prop::collection::vec(0i64..=4, 10)) {
        let x = v(&x);
        let c = Lab::global().cone("PMET", 4).unwrap();
        prop_assert_eq!(c.contains(&x), c.model.contains(&x).unwrap());
    }

    #[test]
    fn membership_is_symmetric(x in prop::collection::vec(0i64..=3, 10), ts in transpositions(4)) {
        let x = v(&x);
        let model = build("PMET", 4).unwrap();
        let y = permute(&x, &ts, model.space);
        prop_assert_eq!(model.contains(&x).unwrap(), model.contains(&y).unwrap());
    }

    #[test]
    fn nonnegative_ray_combinations_are_members(ks in prop::collection::vec(0i64..=3, 62)) {
        let c = Lab::global().cone("PMET", 4).unwrap();
        let mut sum = IntVec::zeros(10);
        for (r, k) in c.rays().iter().zip(&ks) {
            sum = sum.add(&r.scale(&BigInt::from(*k))).unwrap();
        }
        prop_assert!(c.contains(&sum));
    }

    #[test]
    fn permuted_rays_are_rays(ts in transpositions(5)) {
        let c = Lab::global().cone("wPMET", 5).unwrap();
        for r in c.rays() {
            prop_assert!(c.desc.ray_index(&permute(r, &ts, c.model.space)).is_some());
        }
    }

    #[test]
    fn matrix_files_round_trip(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 6), 0..12)) {
        let space = Space::new(SpaceKind::Psym, 3);
        let rows: Vec<IntVec> = rows.iter().map(|r| v(r)).collect();
        let text = write_matrix(&rows, space).unwrap();
        let (back_space, back) = read_matrix(&text).unwrap();
        prop_assert_eq!(back_space, space);
        prop_assert_eq!(write_matrix(&back, back_space).unwrap(), text);
    }
}

#[test]
fn pmet4_rays_round_trip_byte_for_byte() {
    let c = Lab::global().cone("PMET", 4).unwrap();
    let text = write_matrix(c.rays(), c.model.space).unwrap();
    assert_eq!(text.lines().count(), 2 + 62);
    let (space, rows) = read_matrix(&text).unwrap();
    assert_eq!(rows, c.rays());
    assert_eq!(write_matrix(&rows, space).unwrap(), text);
}
