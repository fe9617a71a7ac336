use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use xx0::boxcount::{zq, zq_cspp};
use xx0::chain::{
    domain_wall_formfactor, efp_formfactor, enumerate_bethe_states, ferro_formfactor, ground_state, norm_squared,
    scalar_product,
};
use xx0::oracle::{build_state_vector, string_projector, SectorBasis};
use xx0::qexact::half_exponent;
use xx0::schur::prop2_sum_bruteforce;
use xx0::{LaurentPoly, Rational};

#[test]
fn roots_solve_bethe_equations() {
    for m in 0..=12 {
        for n in 0..=3.min(m + 1) {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            for s in enumerate_bethe_states(m, n).unwrap() {
                for t in s.roots::<f64>() {
                    let lhs = Complex64::from_polar(1.0, (m + 1) as f64 * t);
                    assert!((lhs - sign).norm() < 1e-12, "M={m} N={n}");
                }
            }
        }
    }
}

#[test]
fn efp_is_a_probability_and_matches_projector() {
    for m in 1..=9 {
        for big_n in 1..=3.min(m + 1) {
            let g = ground_state(m, big_n).unwrap();
            let basis = SectorBasis::new(m, big_n).unwrap();
            let bra = build_state_vector(&g.v_inv_sq::<f64>(), &basis).unwrap();
            let ket = build_state_vector(&g.u_sq::<f64>(), &basis).unwrap();
            for n in 0..=m + 1 {
                let e = efp_formfactor::<f64>(&g, n);
                assert!((-1e-12..=1.0 + 1e-12).contains(&e), "M={m} N={big_n} n={n}: {e}");
                let p = string_projector(&basis, n);
                let proj: Complex64 = (0..basis.len()).filter(|&i| p[i]).map(|i| bra[i] * ket[i]).sum();
                let direct = proj.re / norm_squared::<f64>(&g);
                assert!((direct - e).abs() < 1e-10, "M={m} N={big_n} n={n}: {direct} {e}");
            }
        }
    }
}

#[test]
fn orthogonality_by_determinant() {
    for m in 1..=7 {
        for big_n in 1..=3.min(m + 1) {
            let states = enumerate_bethe_states(m, big_n).unwrap();
            for a in &states {
                for b in &states {
                    let sp = scalar_product(&a.v_inv_sq::<f64>(), &b.u_sq::<f64>(), m).unwrap();
                    if a == b {
                        assert!((sp.re - norm_squared::<f64>(a)).abs() < 1e-9 * norm_squared::<f64>(a));
                    } else {
                        assert!(sp.norm() <= 1e-9 * norm_squared::<f64>(a).max(norm_squared::<f64>(b)));
                    }
                }
            }
        }
    }
}

#[test]
fn resolution_of_identity() {
    for m in 1..=7 {
        for big_n in 1..=3.min(m + 1) {
            let basis = SectorBasis::new(m, big_n).unwrap();
            let mut sum = DMatrix::<Complex64>::zeros(basis.len(), basis.len());
            for s in enumerate_bethe_states(m, big_n).unwrap() {
                let ket = build_state_vector(&s.u_sq::<f64>(), &basis).unwrap();
                let bra = build_state_vector(&s.v_inv_sq::<f64>(), &basis).unwrap();
                sum += (ket * bra.transpose()).unscale(norm_squared::<f64>(&s));
            }
            let err = (sum - DMatrix::identity(basis.len(), basis.len())).camax();
            assert!(err < 1e-9, "M={m} N={big_n}: {err}");
        }
    }
}

#[test]
fn domain_wall_formfactor_is_the_restricted_sum() {
    let g = ground_state(9, 3).unwrap();
    let v = g.v_inv_sq::<f64>();
    for n in 0..=3usize {
        let u = ground_state(9, 3 - n).unwrap().u_sq::<f64>();
        let k = 10 - 3;
        let pref: Complex64 = u.iter().map(|x| x.powu(n as u32)).product();
        let brute = prop2_sum_bruteforce(k, n, &v, &u).unwrap() * pref;
        let det = domain_wall_formfactor(&v, &u, n, 9).unwrap();
        assert!((brute - det).norm() < 1e-9 * brute.norm().max(1e-12), "n={n}");
        if n == 0 {
            assert!((det - scalar_product(&v, &u, 9).unwrap()).norm() < 1e-12 * det.norm());
        }
    }
}

fn q_points(q: &Rational, start: i64, len: usize) -> Vec<Rational> {
    (0..len as i64).map(|i| pow(q, start + i)).collect()
}

fn pow(q: &Rational, e: i64) -> Rational {
    LaurentPoly::q_pow(e).eval_rational(q)
}

fn bridges_at(q: Rational) {
    for m in 0..=8usize {
        for big_n in 1..=3.min(m + 1) {
            let n64 = big_n as i64;
            let v = q_points(&q, 1, big_n);
            let u = q_points(&q, 0, big_n);
            let sp = scalar_product(&v, &u, m).unwrap();
            let z = zq_cspp(n64, m as i64).unwrap().shift(-half_exponent(n64 * n64 * (n64 - 1)).unwrap());
            assert_eq!(sp, z.eval_rational(&q), "scalar product M={m} N={big_n}");

            for n in 0..=m + 1 {
                let ff = ferro_formfactor(&v, &u, n, m).unwrap();
                let p = m as i64 - n as i64;
                let expect = if p < n64 - 1 {
                    Rational::from_integer(BigInt::from(0))
                } else {
                    let shift = half_exponent(n64 * n64 * (2 * n as i64 + 1 - n64)).unwrap();
                    zq_cspp(n64, p).unwrap().shift(shift).eval_rational(&q)
                };
                assert_eq!(ff, expect, "efp M={m} N={big_n} n={n}");
            }

            for n in 0..=big_n {
                let l = n64 - n as i64;
                let dw = domain_wall_formfactor(&v, &q_points(&q, 0, big_n - n), n, m).unwrap();
                let k = (m + 1 - big_n) as i64;
                let shift = half_exponent(n as i64 * l * (l - 1)).unwrap();
                let expect = zq(l, n64, k).unwrap().shift(shift).eval_rational(&q);
                assert_eq!(dw, expect, "domain wall M={m} N={big_n} n={n}");
            }
        }
    }
}

#[test]
fn form_factors_count_plane_partitions() {
    bridges_at(Rational::new(BigInt::from(1), BigInt::from(2)));
    bridges_at(Rational::new(BigInt::from(2), BigInt::from(3)));
}

proptest! {
    #![proptest_config(Config { cases: 32, rng_seed: RngSeed::Fixed(0xc4a1), failure_persistence: None, ..Config::default() })]

    #[test]
    fn persistence_is_one_without_a_string(m in 1usize..=10, big_n in 1usize..=3, beta in 0.0f64..4.0) {
        prop_assume!(big_n <= m + 1);
        let b = Complex64::new(beta, 0.0);
        prop_assert_eq!(xx0::chain::persistence_ferro(m, big_n, 0, b).unwrap().value, Complex64::new(1.0, 0.0));
        prop_assert_eq!(xx0::chain::persistence_domain_wall(m, big_n, 0, b).unwrap().value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn persistence_is_real_and_bounded(m in 2usize..=10, big_n in 1usize..=3, n in 1usize..=4, beta in 0.0f64..4.0) {
        prop_assume!(big_n <= m + 1 && n <= m + 1);
        let t = xx0::chain::persistence_ferro(m, big_n, n, Complex64::new(beta, 0.0)).unwrap().value;
        prop_assert!(t.im.abs() < 1e-9);
        prop_assert!(t.re > -1e-12 && t.re < 1.0 + 1e-12);
    }
}
