//! Identity and oracle suites behind `xx0 verify`.
//!
//! Each suite returns a list of [`Check`]s carrying the worst deviation
//! seen over its grid. Exact checks count mismatches and must report 0.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xx0::asym::{
    barnes_g_integer, big_phi, ferro_asymptotic, ferro_log_slope, mehta_integral, mehta_quadrature, phi_n,
    phi_n_leading,
};
use xx0::boxcount::{a_cspp, ln_count, macmahon, proposition3, zq, zq_cspp};
use xx0::chain::{
    domain_wall_formfactor, energy, enumerate_bethe_states, ferro_formfactor, ground_state, norm_squared,
    persistence_domain_wall, persistence_domain_wall_spectral, persistence_ferro, persistence_ferro_spectral,
    scalar_product,
};
use xx0::combinat::{
    count_column_strict_pp, count_lattice_path_families, count_plane_partitions, volume_histogram, BoxDims,
};
use xx0::oracle::{build_state_vector, eigen_residual, oracle_domain_wall, oracle_ferro, pair, Sector, SectorBasis};
use xx0::qexact::{binomial_determinant, half_exponent, IndexTuples};
use xx0::schur::{
    binet_cauchy_bruteforce, binet_cauchy_kernel, prop2_determinant, prop2_mirrored_bruteforce,
    prop2_mirrored_determinant, prop2_sum_bruteforce,
};
use xx0::{LaurentPoly, Rational};

use crate::table::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Prop3,
    Counts,
    GesselViennot,
    BinetCauchy,
    Prop2,
    Bethe,
    Correlators,
    Bridge,
    Mehta,
    Asym,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Prop3,
        Suite::Counts,
        Suite::GesselViennot,
        Suite::BinetCauchy,
        Suite::Prop2,
        Suite::Bethe,
        Suite::Correlators,
        Suite::Bridge,
        Suite::Mehta,
        Suite::Asym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop3 => "prop3",
            Suite::Counts => "counts",
            Suite::GesselViennot => "gessel_viennot",
            Suite::BinetCauchy => "binet_cauchy",
            Suite::Prop2 => "prop2",
            Suite::Bethe => "bethe",
            Suite::Correlators => "correlators",
            Suite::Bridge => "bridge",
            Suite::Mehta => "mehta",
            Suite::Asym => "asym",
        }
    }
}

/// Negative controls for the verifier itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Scales every determinant-kernel value by `1 + 1e-6`.
    Kernel,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    /// Largest `N` in the two-block determinant grid.
    pub l_max: i64,
    pub m_max: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Tolerance of the floating-point identity checks.
    pub tol: f64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { suites: Suite::ALL.to_vec(), l_max: 4, m_max: 8, n_max: 3, seed: 0, tol: 1e-9, fault: None }
    }
}

impl VerifyConfig {
    fn kernel<T: Clone + std::ops::Mul<Complex64, Output = T>>(&self, x: T) -> T {
        match self.fault {
            Some(Fault::Kernel) => x * Complex64::new(1.0 + 1e-6, 0.0),
            None => x,
        }
    }

    fn kernel_f64(&self, x: f64) -> f64 {
        match self.fault {
            Some(Fault::Kernel) => x * (1.0 + 1e-6),
            None => x,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

struct Acc {
    name: &'static str,
    tol: f64,
    cases: usize,
    worst: f64,
    bad: bool,
}

impl Acc {
    fn new(name: &'static str, tol: f64) -> Self {
        Acc { name, tol, cases: 0, worst: 0.0, bad: false }
    }

    fn exact(name: &'static str) -> Self {
        Acc::new(name, 0.0)
    }

    fn record(&mut self, dev: f64) {
        self.cases += 1;
        if dev.is_nan() || dev > self.tol {
            self.bad = true;
        }
        self.worst = if dev.is_nan() { f64::NAN } else { self.worst.max(dev) };
    }

    /// Folds in the worst deviation over `count` comparisons.
    fn record_many(&mut self, dev: f64, count: usize) {
        if count == 0 {
            return;
        }
        self.record(dev);
        self.cases += count.saturating_sub(1);
    }

    fn equal<T: PartialEq>(&mut self, a: &T, b: &T) {
        self.record(if a == b { 0.0 } else { 1.0 });
    }

    fn finish(self, suite: Suite) -> Check {
        Check {
            suite: suite.name(),
            name: self.name,
            cases: self.cases,
            max_deviation: self.worst,
            tolerance: self.tol,
            pass: !self.bad && self.cases > 0,
        }
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Relative deviation with an absolute floor for values that vanish.
fn rel_floor(a: Complex64, b: Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::from_polar(rng.random_range(0.5..1.5), rng.random_range(-3.1..3.1))).collect()
}

fn prop3_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let mut acc = Acc::exact("triple_equality");
    for n in 1..=cfg.l_max {
        for l in 1..=n {
            for p in n + 1..2 * n {
                let ok = proposition3(l, n, p).is_ok_and(|r| r.all_equal);
                acc.record(if ok { 0.0 } else { 1.0 });
            }
        }
    }
    vec![acc]
}

fn counts_suite(_: &VerifyConfig) -> Vec<Acc> {
    let mut pp = Acc::exact("macmahon_enumeration");
    for l in 0..=4 {
        for n in 0..=4 {
            for p in 0..=4 {
                let count = count_plane_partitions(BoxDims::new(l as usize, n as usize, p)).map(BigInt::from);
                pp.equal(&count.ok(), &Some(macmahon(l, n, p)));
            }
        }
    }
    let mut cs = Acc::exact("cspp_enumeration");
    for n in 1..=3 {
        for p in n - 1..=5 {
            let count = count_column_strict_pp(BoxDims::new(n as usize, n as usize, p)).map(BigInt::from);
            cs.equal(&count.ok(), &a_cspp(n, p).ok());
        }
    }
    let as_poly =
        |h: Vec<u64>| LaurentPoly::from_coeffs(h.into_iter().enumerate().map(|(e, c)| (e as i64, BigInt::from(c))));
    let mut zv = Acc::exact("zq_volume_enumeration");
    for l in 0..=3 {
        for n in 0..=3 {
            for p in 0..=3 {
                let h = volume_histogram(BoxDims::new(l as usize, n as usize, p), false).map(as_poly);
                zv.equal(&h.ok(), &zq(l, n, p).ok());
            }
        }
    }
    let mut zc = Acc::exact("zq_cspp_volume_enumeration");
    for n in 1..=3 {
        for p in n - 1..=3 {
            let h = volume_histogram(BoxDims::new(n as usize, n as usize, p), true).map(as_poly);
            zc.equal(&h.ok(), &zq_cspp(n, p).ok());
        }
    }
    vec![pp, cs, zv, zc]
}

fn increasing_tuples(max: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: i64, max: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            cur.push(v);
            rec(v + 1, max, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, max, len, &mut cur, &mut out);
    out
}

fn gessel_viennot_suite(_: &VerifyConfig) -> Vec<Acc> {
    let mut general = Acc::exact("binomial_det_vs_path_count");
    for len in 1..=3 {
        let tuples = increasing_tuples(5, len);
        for a in &tuples {
            for b in &tuples {
                let t = IndexTuples::new(a.clone(), b.clone()).expect("increasing tuples");
                general.equal(&count_lattice_path_families(a, b).ok(), &Some(binomial_determinant(&t)));
            }
        }
    }
    let mut boxes = Acc::exact("binomial_pattern_vs_macmahon");
    for l in 1..=3i64 {
        for n in 1..=3i64 {
            for p in 1..=3i64 {
                let t = IndexTuples::consecutive(l + n, l, p as usize).expect("consecutive tuples");
                let paths = count_lattice_path_families(t.a(), t.b()).ok();
                boxes.equal(&binomial_determinant(&t), &macmahon(l, n, p));
                boxes.equal(&paths, &Some(macmahon(l, n, p)));
            }
        }
    }
    vec![general, boxes]
}

fn binet_cauchy_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut acc = Acc::new("kernel_vs_schur_sum", cfg.tol);
    for _ in 0..20 {
        for n_pts in 1..=3 {
            let (y, x) = (random_points(&mut rng, n_pts), random_points(&mut rng, n_pts));
            for l in 0..=5 {
                for n in 0..=l {
                    match (binet_cauchy_kernel(l, n, &y, &x), binet_cauchy_bruteforce(l, n, &y, &x)) {
                        (Ok(det), Ok(brute)) => acc.record(rel(cfg.kernel(det), brute)),
                        _ => acc.record(f64::NAN),
                    }
                }
            }
        }
    }
    vec![acc]
}

fn prop2_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut direct = Acc::new("determinant_vs_schur_sum", cfg.tol);
    let mut mirror = Acc::new("mirrored_determinant_vs_schur_sum", cfg.tol);
    for _ in 0..20 {
        for big_n in 1..=3 {
            for n in 0..=big_n {
                let long = random_points(&mut rng, big_n);
                let short = random_points(&mut rng, big_n - n);
                for k in 0..=5 {
                    match (prop2_determinant(k, n, &long, &short), prop2_sum_bruteforce(k, n, &long, &short)) {
                        (Ok(d), Ok(b)) => direct.record(rel(cfg.kernel(d), b)),
                        _ => direct.record(f64::NAN),
                    }
                    match (
                        prop2_mirrored_determinant(k, n, &long, &short),
                        prop2_mirrored_bruteforce(k, n, &long, &short),
                    ) {
                        (Ok(d), Ok(b)) => mirror.record(rel(cfg.kernel(d), b)),
                        _ => mirror.record(f64::NAN),
                    }
                }
            }
        }
    }
    vec![direct, mirror]
}

#[derive(Default)]
struct Tally {
    worst: [f64; 5],
    count: [usize; 5],
}

impl Tally {
    fn note(&mut self, i: usize, d: f64) {
        self.worst[i] = if d.is_nan() { f64::NAN } else { self.worst[i].max(d) };
        self.count[i] += 1;
    }
}

fn sectors(cfg: &VerifyConfig) -> Vec<(usize, usize)> {
    (1..=cfg.m_max).flat_map(|m| (1..=cfg.n_max.min(m + 1)).map(move |n| (m, n))).collect()
}

fn bethe_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let per_sector: Vec<Tally> = sectors(cfg)
        .par_iter()
        .map(|&(m, big_n)| {
            let mut tally = Tally::default();
            let mut note = |i: usize, d: f64| tally.note(i, d);
            let (Ok(sector), Ok(states)) = (Sector::new(m, big_n), enumerate_bethe_states(m, big_n)) else {
                return Tally { worst: [f64::NAN; 5], count: [1; 5] };
            };
            let basis: &SectorBasis = &sector.basis;
            let mut energies: Vec<f64> = states.iter().map(energy::<f64>).collect();
            energies.sort_by(f64::total_cmp);
            for (a, b) in energies.iter().zip(sector.eigenvalues()) {
                note(0, (a - b).abs());
            }
            let kets: Vec<_> =
                states.iter().map(|s| build_state_vector(&s.u_sq::<f64>(), basis).expect("sector fits")).collect();
            let bras: Vec<_> =
                states.iter().map(|s| build_state_vector(&s.v_inv_sq::<f64>(), basis).expect("sector fits")).collect();
            let norms: Vec<f64> = states.iter().map(norm_squared::<f64>).collect();
            let mut identity = DMatrix::<Complex64>::zeros(basis.len(), basis.len());
            for (i, s) in states.iter().enumerate() {
                note(1, eigen_residual(s, &sector).unwrap_or(f64::NAN));
                for j in 0..states.len() {
                    let direct = pair(&bras[i], &kets[j]);
                    if i == j {
                        note(2, (direct.re - norms[i]).abs().max(direct.im.abs()) / norms[i]);
                    } else {
                        note(3, direct.norm() / (norms[i] * norms[j]).sqrt());
                    }
                }
                identity += (&kets[i] * bras[i].transpose()).unscale(norms[i]);
            }
            note(4, (identity - DMatrix::identity(basis.len(), basis.len())).camax());
            tally
        })
        .collect();
    let names = ["energies_vs_spectrum", "eigen_residual", "norm_formula", "orthogonality", "resolution_of_identity"];
    names
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let mut acc = Acc::new(name, cfg.tol);
            for t in &per_sector {
                acc.record_many(t.worst[i], t.count[i]);
            }
            acc
        })
        .collect()
}

const BETAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
/// Absolute scale below which correlator deviations are measured absolutely.
const CORRELATOR_FLOOR: f64 = 1e-4;

fn correlators_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    // per sector: ferro det, ferro spectral, wall det, wall spectral, boundary
    let per_sector: Vec<Tally> = sectors(cfg)
        .par_iter()
        .map(|&(m, big_n)| {
            let mut tally = Tally::default();
            let mut note = |i: usize, d: f64| tally.note(i, d);
            for beta in BETAS {
                let b = Complex64::new(beta, 0.0);
                for n in 0..=m + 1 {
                    let (det, spec, ed) = (
                        persistence_ferro(m, big_n, n, b).map(|r| r.value),
                        persistence_ferro_spectral(m, big_n, n, b).map(|r| r.value),
                        oracle_ferro(m, big_n, n, b),
                    );
                    let (Ok(det), Ok(spec), Ok(ed)) = (det, spec, ed) else {
                        note(0, f64::NAN);
                        continue;
                    };
                    if n == 0 {
                        note(4, (det - Complex64::one()).norm().max((spec - Complex64::one()).norm()));
                        continue;
                    }
                    note(0, rel_floor(cfg.kernel(det), ed, CORRELATOR_FLOOR));
                    note(1, rel_floor(spec, ed, CORRELATOR_FLOOR));
                }
                for n in 0..=big_n {
                    let (det, spec, ed) = (
                        persistence_domain_wall(m, big_n, n, b).map(|r| r.value),
                        persistence_domain_wall_spectral(m, big_n, n, b).map(|r| r.value),
                        oracle_domain_wall(m, big_n, n, b),
                    );
                    let (Ok(det), Ok(spec), Ok(ed)) = (det, spec, ed) else {
                        note(2, f64::NAN);
                        continue;
                    };
                    if n == 0 {
                        note(4, (det - Complex64::one()).norm().max((spec - Complex64::one()).norm()));
                        continue;
                    }
                    note(2, rel_floor(cfg.kernel(det), ed, CORRELATOR_FLOOR));
                    note(3, rel_floor(spec, ed, CORRELATOR_FLOOR));
                }
            }
            tally
        })
        .collect();
    let names = [
        ("ferro_determinant_vs_oracle", cfg.tol),
        ("ferro_spectral_vs_oracle", cfg.tol),
        ("wall_determinant_vs_oracle", cfg.tol),
        ("wall_spectral_vs_oracle", cfg.tol),
        ("unit_at_zero_length", 0.0),
    ];
    names
        .iter()
        .enumerate()
        .map(|(i, &(name, tol))| {
            let mut acc = Acc::new(name, tol);
            for t in &per_sector {
                acc.record_many(t.worst[i], t.count[i]);
            }
            acc
        })
        .collect()
}

fn q_points(q: &Rational, start: i64, len: usize) -> Vec<Rational> {
    (0..len as i64).map(|i| LaurentPoly::q_pow(start + i).eval_rational(q)).collect()
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn rel_real(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn bridge_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let mut exact = [Acc::exact("scalar_product_exact"), Acc::exact("efp_exact"), Acc::exact("wall_exact")];
    let mut float =
        [Acc::new("scalar_product_f64", cfg.tol), Acc::new("efp_f64", cfg.tol), Acc::new("wall_f64", cfg.tol)];
    let zero = Rational::zero();
    for q in [Rational::new(BigInt::from(1), BigInt::from(2)), Rational::new(BigInt::from(2), BigInt::from(3))] {
        for m in 0..=cfg.m_max {
            for big_n in 1..=cfg.n_max.min(m + 1) {
                let n64 = big_n as i64;
                let (v, u) = (q_points(&q, 1, big_n), q_points(&q, 0, big_n));
                let (vf, uf): (Vec<f64>, Vec<f64>) = (v.iter().map(to_f64).collect(), u.iter().map(to_f64).collect());
                let shift = half_exponent(n64 * n64 * (n64 - 1)).expect("even");
                let z = zq_cspp(n64, m as i64).expect("domain").shift(-shift).eval_rational(&q);
                let sp = scalar_product(&v, &u, m).ok();
                exact[0].equal(&sp, &Some(z.clone()));
                let spf = scalar_product(&vf, &uf, m).map_or(f64::NAN, |x| cfg.kernel_f64(x));
                float[0].record(rel_real(spf, to_f64(&z)));

                for n in 0..=m + 1 {
                    let p = m as i64 - n as i64;
                    let expect = if p < n64 - 1 {
                        zero.clone()
                    } else {
                        let shift = half_exponent(n64 * n64 * (2 * n as i64 + 1 - n64)).expect("even");
                        zq_cspp(n64, p).expect("domain").shift(shift).eval_rational(&q)
                    };
                    exact[1].equal(&ferro_formfactor(&v, &u, n, m).ok(), &Some(expect.clone()));
                    let ff = ferro_formfactor(&vf, &uf, n, m).map_or(f64::NAN, |x| cfg.kernel_f64(x));
                    float[1].record(rel_real(ff, to_f64(&expect)));
                }

                for n in 0..=big_n {
                    let l = n64 - n as i64;
                    let w = q_points(&q, 0, big_n - n);
                    let wf: Vec<f64> = w.iter().map(to_f64).collect();
                    let k = (m + 1 - big_n) as i64;
                    let shift = half_exponent(n as i64 * l * (l - 1)).expect("even");
                    let expect = zq(l, n64, k).expect("domain").shift(shift).eval_rational(&q);
                    exact[2].equal(&domain_wall_formfactor(&v, &w, n, m).ok(), &Some(expect.clone()));
                    let dw = domain_wall_formfactor(&vf, &wf, n, m).map_or(f64::NAN, |x| cfg.kernel_f64(x));
                    float[2].record(rel_real(dw, to_f64(&expect)));
                }
            }
        }
    }
    exact.into_iter().chain(float).collect()
}

fn mehta_suite(_: &VerifyConfig) -> Vec<Acc> {
    let mut quad = Acc::new("mehta_quadrature", 1e-6);
    for n in 1..=3 {
        quad.record(rel_real(mehta_quadrature(n, 1e-8), mehta_integral(n)));
    }
    let mut rec = Acc::exact("barnes_recursion");
    let mut fact = BigInt::one();
    for n in 0..=38i64 {
        if n > 0 {
            fact *= n;
        }
        let (lo, hi) = (barnes_g_integer(n).ok(), barnes_g_integer(n + 1).ok());
        rec.equal(&lo.map(|g| g * &fact), &hi);
    }
    let mut norms = Acc::new("inverse_norm_asymptotics", 0.02);
    for m in [200, 400, 1000] {
        for n in 1..=4 {
            let exact = 1.0 / norm_squared::<f64>(&ground_state(m, n).expect("valid sector"));
            let approx = (std::f64::consts::TAU / (m + 1) as f64).powi((n * n) as i32) * (2.0 * phi_n(n as u32)).exp();
            norms.record((approx / exact - 1.0).abs());
        }
    }
    let mut large = Acc::new("phi_large_n_law", 0.05);
    large.record(rel_real(phi_n_leading(100), phi_n(100)));
    vec![quad, rec, norms, large]
}

fn asym_suite(cfg: &VerifyConfig) -> Vec<Acc> {
    let mut slope = Acc::new("critical_exponent", cfg.tol);
    for (m, big_n) in [(12, 2), (40, 3), (200, 6), (1000, 12)] {
        for n in [0, 1, 3] {
            for beta in [2.0, 10.0, 100.0] {
                let s = ferro_log_slope(m, big_n, n, beta, 1e-3).unwrap_or(f64::NAN);
                slope.record((s + 0.5 * (big_n * big_n) as f64).abs());
            }
        }
    }
    let mut doubling = Acc::new("beta_doubling_shift", 1e-12);
    for big_n in 1..=6u32 {
        let shift = big_phi(big_n, 50, 3.0) - big_phi(big_n, 50, 6.0);
        doubling.record((shift - 0.5 * (big_n * big_n) as f64 * 2f64.ln()).abs());
    }
    let mut amp = Acc::new("amplitude_is_squared_count", 1e-12);
    for (m, big_n, n) in [(20, 3, 4), (12, 2, 5), (30, 4, 0)] {
        let est = ferro_asymptotic(m, big_n, n, 40.0).map_or(f64::NAN, |e| e.pieces.amplitude);
        let count = a_cspp(big_n as i64, (m - n) as i64).map_or(f64::NAN, |c| 2.0 * ln_count(&c));
        amp.record((est - count).abs());
    }
    vec![slope, doubling, amp]
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    let accs = match suite {
        Suite::Prop3 => prop3_suite(cfg),
        Suite::Counts => counts_suite(cfg),
        Suite::GesselViennot => gessel_viennot_suite(cfg),
        Suite::BinetCauchy => binet_cauchy_suite(cfg),
        Suite::Prop2 => prop2_suite(cfg),
        Suite::Bethe => bethe_suite(cfg),
        Suite::Correlators => correlators_suite(cfg),
        Suite::Bridge => bridge_suite(cfg),
        Suite::Mehta => mehta_suite(cfg),
        Suite::Asym => asym_suite(cfg),
    };
    accs.into_iter().map(|a| a.finish(suite)).collect()
}

pub const VERIFY_COLUMNS: [&str; 6] = ["suite", "check", "cases", "max_deviation", "tolerance", "pass"];

/// Runs the selected suites (in parallel, reported in a fixed order) and
/// returns the report with the overall verdict.
pub fn cmd_verify(cfg: &VerifyConfig) -> (Table, Vec<Check>) {
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let checks: Vec<Check> = suites.par_iter().map(|&s| run_suite(s, cfg)).collect::<Vec<_>>().concat();
    let mut t = Table::new(VERIFY_COLUMNS.to_vec());
    for c in &checks {
        t.push(vec![
            c.suite.into(),
            c.name.into(),
            c.cases.into(),
            c.max_deviation.into(),
            c.tolerance.into(),
            Cell::Bool(c.pass),
        ]);
    }
    (t, checks)
}
