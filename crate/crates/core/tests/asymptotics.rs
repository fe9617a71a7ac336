use num_bigint::BigInt;
use xx0::asym::{
    a_cspp_barnes, barnes_expansion, barnes_g_integer, big_phi, domain_wall_asymptotic, ferro_asymptotic,
    ferro_decreasing_regime, ferro_log_slope, ln_a_cspp_barnes, ln_macmahon_barnes, log_barnes_g, mehta_integral,
    mehta_quadrature, phi_n, phi_n_leading,
};
use xx0::boxcount::{a_cspp, ln_count, macmahon};
use xx0::chain::{ground_state, norm_squared};

#[test]
fn barnes_recursion_is_exact() {
    let mut fact = BigInt::from(1);
    for n in 0..=38i64 {
        if n > 0 {
            fact *= n;
        }
        let (lo, hi) = (barnes_g_integer(n).unwrap(), barnes_g_integer(n + 1).unwrap());
        assert_eq!(&lo * &fact, hi, "n={n}");
    }
}

#[test]
fn barnes_expansion_accuracy() {
    for z in 20..=60 {
        let exact = log_barnes_g(z as f64).unwrap();
        assert!((barnes_expansion(z as f64) - exact).abs() <= 1e-3 * exact.abs(), "z={z}");
    }
    assert!((barnes_expansion(4.0) - 12f64.ln()).abs() < 5e-4);
    let ratio = |z: f64| log_barnes_g(z).unwrap() / (z * z * z.ln());
    let (a, b, c) = (ratio(1e3), ratio(1e4), ratio(1e6));
    assert!(a < b && b < c && c < 0.5 && 0.5 - c < 0.06);
}

#[test]
fn mehta_integral_forms() {
    for n in 1..=20 {
        assert!((phi_n(n).exp() / mehta_integral(n) - 1.0).abs() < 1e-12);
        let via_g = log_barnes_g(n as f64).unwrap() - 0.5 * n as f64 * std::f64::consts::TAU.ln();
        assert!((via_g - phi_n(n)).abs() < 1e-9 * phi_n(n).abs().max(1.0));
    }
    for n in 1..=3 {
        let quad = mehta_quadrature(n, 1e-8);
        assert!((quad - mehta_integral(n)).abs() < 1e-6 * mehta_integral(n), "N={n}: {quad}");
    }
    assert!((phi_n(4) - (12f64.ln() - 2.0 * std::f64::consts::TAU.ln())).abs() < 1e-12);
    let big = phi_n(100);
    assert!(((big - phi_n_leading(100)) / big).abs() <= 0.05);
}

#[test]
fn inverse_norm_asymptotics() {
    for m in [200, 400, 1000] {
        for n in 1..=4 {
            let exact = 1.0 / norm_squared::<f64>(&ground_state(m, n).unwrap());
            let approx = (std::f64::consts::TAU / (m + 1) as f64).powi((n * n) as i32) * (2.0 * phi_n(n as u32)).exp();
            assert!((approx / exact - 1.0).abs() < 0.02, "M={m} N={n}");
        }
    }
}

#[test]
fn box_counts_through_barnes() {
    for n in 1..=6i64 {
        for p in n - 1..=20 {
            let exact = a_cspp(n, p).unwrap();
            assert_eq!(a_cspp_barnes(n, p).unwrap(), exact, "N={n} P={p}");
            let ln = ln_count(&exact);
            assert!((ln_a_cspp_barnes(n, p).unwrap() - ln).abs() <= 1e-12 * ln.max(1.0), "N={n} P={p}");
        }
    }
    for (l, n, p) in [(2, 3, 7), (3, 5, 9), (4, 4, 4)] {
        let exact = ln_count(&macmahon(l, n, p));
        assert!((ln_macmahon_barnes(l, n, p).unwrap() - exact).abs() < 1e-9 * exact);
    }
}

#[test]
fn column_strict_growth_law() {
    let n = 30i64;
    let ratio = |p: i64| ln_a_cspp_barnes(n, p).unwrap() / ((n * n) as f64 * (p as f64 / n as f64).ln());
    let seq: Vec<f64> = [300, 3_000, 30_000, 300_000].iter().map(|&p| ratio(p)).collect();
    for w in seq.windows(2) {
        assert!((w[1] - 1.0).abs() < (w[0] - 1.0).abs(), "{seq:?}");
    }
}

#[test]
fn wall_growth_law() {
    let (big_n, n) = (20i64, 5i64);
    let ratio = |m: i64| {
        let lnv = ln_macmahon_barnes(big_n - n, big_n, m - big_n + 1).unwrap();
        lnv / ((big_n * (big_n - n)) as f64 * ((m - n) as f64 / (2 * big_n - n) as f64).ln())
    };
    let seq: Vec<f64> = [400, 4_000, 40_000, 400_000].iter().map(|&m| ratio(m)).collect();
    for w in seq.windows(2) {
        assert!((w[1] - 1.0).abs() < (w[0] - 1.0).abs(), "{seq:?}");
    }
}

#[test]
fn big_phi_scaling() {
    for n in 1..=6u32 {
        let drop = big_phi(n, 50, 3.0) - big_phi(n, 50, 6.0);
        assert!((drop - 0.5 * (n * n) as f64 * 2f64.ln()).abs() < 1e-12);
    }
    let e = ferro_asymptotic(100, 5, 0, 50.0).unwrap();
    assert!((e.log_value - (e.pieces.amplitude + big_phi(5, 100, 50.0))).abs() < 1e-9);
}

#[test]
fn critical_exponent_is_exact() {
    for (m, n_particles, n) in [(12, 2, 3), (100, 5, 10), (1000, 12, 0)] {
        let s = ferro_log_slope(m, n_particles, n, 10.0, 1e-3).unwrap();
        assert!((s + 0.5 * (n_particles * n_particles) as f64).abs() < 1e-9, "{s}");
    }
}

#[test]
fn amplitudes_are_squared_counts() {
    let e = ferro_asymptotic(20, 3, 4, 40.0).unwrap();
    assert!((e.pieces.amplitude - 2.0 * ln_count(&a_cspp(3, 16).unwrap())).abs() < 1e-12);
    let d = domain_wall_asymptotic(30, 3, 1, 60.0).unwrap();
    assert!((d.pieces.amplitude - 2.0 * ln_count(&macmahon(2, 3, 28))).abs() < 1e-12);
    let d0 = domain_wall_asymptotic(30, 3, 0, 60.0).unwrap();
    assert!((d0.pieces.amplitude - 2.0 * ln_count(&macmahon(3, 3, 28))).abs() < 1e-12);
    let big = ferro_asymptotic(5000, 60, 10, 40.0).unwrap();
    assert!((big.pieces.amplitude - 2.0 * ln_a_cspp_barnes(60, 4990).unwrap()).abs() < 1e-9 * big.pieces.amplitude);
}

#[test]
fn regime_predicate() {
    assert!(ferro_decreasing_regime(100, 4, 10, 1e-6, 1.0));
    assert!(!ferro_decreasing_regime(100, 4, 10, 1.0, 1.0));
}
