use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use xx0::boxcount::{a_cspp, macmahon, zq, zq_cspp};
use xx0::combinat::{
    conjugate, count_column_strict_pp, count_lattice_path_families, count_plane_partitions, enumerate_column_strict_pp,
    enumerate_partitions_in_box, enumerate_plane_partitions, volume_histogram, BoxDims, Partition, DEFAULT_BUDGET,
};
use xx0::linalg::{det_minors, SquareMatrix};
use xx0::qexact::{binomial, binomial_determinant, exact_det, q_binomial, IndexTuples, LaurentPoly};

fn seeded(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0i64..=8, 0..=8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, -3i64..=3), 0..4)
        .prop_map(|terms| terms.into_iter().fold(LaurentPoly::zero(), |acc, (e, c)| acc + LaurentPoly::monomial(c, e)))
}

fn increasing(max: i64, len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::sample::subsequence((0..=max).collect::<Vec<_>>(), len)
}

proptest! {
    #![proptest_config(seeded(128))]

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(conjugate(&conjugate(&p)), p.clone());
        prop_assert_eq!(conjugate(&p).weight(), p.weight());
    }

    #[test]
    fn q_binomial_symmetry_and_specialization(n in 0i64..=12, r in 0i64..=12) {
        prop_assume!(r <= n);
        prop_assert_eq!(q_binomial(n, r), q_binomial(n, n - r));
        prop_assert_eq!(q_binomial(n, r).at_one(), binomial(n, r));
    }

    #[test]
    fn both_pascal_rules(n in 2i64..=12, r in 1i64..=11) {
        prop_assume!(r < n);
        let q = LaurentPoly::q_pow;
        let left = q_binomial(n - 1, r - 1) + q(r) * q_binomial(n - 1, r);
        let right = q(n - r) * q_binomial(n - 1, r - 1) + q_binomial(n - 1, r);
        prop_assert_eq!(&left, &q_binomial(n, r));
        prop_assert_eq!(&right, &q_binomial(n, r));
    }

    #[test]
    fn exact_det_matches_minors(entries in prop::collection::vec(laurent(), 16), dim in 3usize..=4) {
        let m = SquareMatrix::from_fn(dim, |i, j| entries[i * 4 + j].clone());
        prop_assert_eq!(exact_det(m.clone()), det_minors(&m));
    }

    #[test]
    fn gessel_viennot(s in 1usize..=3, a in increasing(6, 3), b in increasing(6, 3)) {
        let (a, b) = (a[..s].to_vec(), b[..s].to_vec());
        let t = IndexTuples::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(count_lattice_path_families(&a, &b).unwrap(), binomial_determinant(&t));
    }

    #[test]
    fn box_function_is_symmetric(l in 0i64..=4, n in 0i64..=4, p in 0i64..=4) {
        let z = zq(l, n, p).unwrap();
        for (a, b, c) in [(l, p, n), (n, l, p), (n, p, l), (p, l, n), (p, n, l)] {
            prop_assert_eq!(&zq(a, b, c).unwrap(), &z);
        }
        prop_assert_eq!(z.at_one(), macmahon(l, n, p));
    }
}

#[test]
fn partitions_in_box_count() {
    for m in 0..=8 {
        for n in 0..=8usize {
            let count = enumerate_partitions_in_box(m, n).count();
            assert_eq!(BigInt::from(count), binomial(m + n as i64, n as i64));
        }
    }
}

#[test]
fn q_binomial_counts_young_diagrams() {
    for n in 0..=10 {
        for r in 0..=n {
            let mut hist: HashMap<i64, i64> = HashMap::new();
            for p in enumerate_partitions_in_box(n - r, r as usize) {
                *hist.entry(p.weight()).or_default() += 1;
            }
            let gf = LaurentPoly::from_coeffs(hist.into_iter().map(|(e, c)| (e, BigInt::from(c))));
            assert_eq!(gf, q_binomial(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn plane_partitions_match_macmahon() {
    for l in 0..=4 {
        for n in 0..=4 {
            for p in 0..=4 {
                let count = count_plane_partitions(BoxDims::new(l as usize, n as usize, p)).unwrap();
                assert_eq!(BigInt::from(count), macmahon(l, n, p), "B({l},{n},{p})");
            }
        }
    }
}

#[test]
fn column_strict_match_product() {
    for n in 1..=3 {
        for p in n - 1..=5 {
            let count = count_column_strict_pp(BoxDims::new(n as usize, n as usize, p)).unwrap();
            assert_eq!(BigInt::from(count), a_cspp(n, p).unwrap(), "N={n} P={p}");
        }
    }
}

#[test]
fn volume_generating_functions() {
    let as_poly =
        |h: Vec<u64>| LaurentPoly::from_coeffs(h.into_iter().enumerate().map(|(e, c)| (e as i64, BigInt::from(c))));
    for l in 0..=3 {
        for n in 0..=3 {
            for p in 0..=3 {
                let h = volume_histogram(BoxDims::new(l as usize, n as usize, p), false).unwrap();
                assert_eq!(as_poly(h), zq(l, n, p).unwrap(), "B({l},{n},{p})");
            }
        }
    }
    for n in 1..=3 {
        for p in n - 1..=4 {
            let h = volume_histogram(BoxDims::new(n as usize, n as usize, p), true).unwrap();
            assert_eq!(as_poly(h), zq_cspp(n, p).unwrap(), "N={n} P={p}");
        }
    }
}

#[test]
fn staircase_bijection() {
    for n in 1..=3usize {
        for p in 0..=3 {
            let mut images = Vec::new();
            enumerate_plane_partitions(BoxDims::new(n, n, p), DEFAULT_BUDGET, &mut |pp| {
                let shifted = pp.add_staircase();
                assert!(shifted.is_column_strict());
                assert_eq!(shifted.volume() - pp.volume(), (n * n * (n - 1) / 2) as i64);
                images.push(shifted.entries().to_vec());
            })
            .unwrap();
            let mut targets = Vec::new();
            let b = BoxDims::new(n, n, p + n as i64 - 1);
            enumerate_column_strict_pp(b, DEFAULT_BUDGET, &mut |pp| targets.push(pp.entries().to_vec())).unwrap();
            images.sort();
            targets.sort();
            assert_eq!(images, targets, "N={n} P={p}");
        }
    }
}

#[test]
fn binomial_pattern_counts_boxes() {
    for l in 1..=3i64 {
        for n in 1..=3i64 {
            for pp in 1..=3i64 {
                let t = IndexTuples::consecutive(l + n, l, pp as usize).unwrap();
                let paths = count_lattice_path_families(t.a(), t.b()).unwrap();
                assert_eq!(binomial_determinant(&t), macmahon(l, n, pp), "L={l} N={n} P={pp}");
                assert_eq!(paths, macmahon(l, n, pp));
            }
        }
    }
}
