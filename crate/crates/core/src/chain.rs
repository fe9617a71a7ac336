//! Bethe states of the periodic XX0 chain, form-factors, vicious-walker
//! amplitudes and the two thermal persistence correlators.
//!
//! Sites are `0..=M`. A state with `N` down spins is labelled by strictly
//! decreasing quantum numbers `M >= I_1 > ... > I_N >= 0`; its roots are
//! `theta_j = 2 pi (I_j - (N-1)/2) / (M+1)`.

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::combinat::StrictPartition;
use crate::linalg::{det_lu, SquareMatrix};
use crate::qexact::binomial;
use crate::scalar::{vandermonde, Real, Scalar};
use crate::schur::{binet_cauchy_kernel, block_kernel, prop2_determinant, SchurError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("invalid chain parameters: {0}")]
    Domain(String),
    #[error("sector has {needed} states, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// Largest number of Bethe states a spectral sum will enumerate.
pub const SPECTRAL_BUDGET: u128 = 1_000_000;

/// Chain of `m + 1` sites with `n` down spins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainParams {
    pub m: usize,
    pub n: usize,
}

impl ChainParams {
    pub fn new(m: usize, n: usize) -> Result<Self, ChainError> {
        if n > m + 1 {
            return Err(ChainError::Domain(format!("N = {n} exceeds the {} sites", m + 1)));
        }
        Ok(ChainParams { m, n })
    }

    pub fn sites(&self) -> usize {
        self.m + 1
    }

    /// `K = M + 1 - N`, the largest part a Young diagram may have.
    pub fn k(&self) -> usize {
        self.m + 1 - self.n
    }

    pub fn sector_size(&self) -> u128 {
        binomial(self.sites() as i64, self.n as i64).try_into().unwrap_or(u128::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BetheState {
    m: usize,
    quantum_numbers: Vec<i64>,
}

impl BetheState {
    pub fn new(m: usize, quantum_numbers: Vec<i64>) -> Result<Self, ChainError> {
        let ok =
            quantum_numbers.windows(2).all(|w| w[0] > w[1]) && quantum_numbers.iter().all(|&i| i >= 0 && i <= m as i64);
        if !ok {
            return Err(ChainError::Domain(format!(
                "quantum numbers {quantum_numbers:?} must be strictly decreasing within 0..={m}"
            )));
        }
        Ok(BetheState { m, quantum_numbers })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_particles(&self) -> usize {
        self.quantum_numbers.len()
    }

    pub fn quantum_numbers(&self) -> &[i64] {
        &self.quantum_numbers
    }

    pub fn params(&self) -> ChainParams {
        ChainParams { m: self.m, n: self.num_particles() }
    }

    pub fn roots<R: Real>(&self) -> Vec<R> {
        let n = self.num_particles() as i64;
        self.quantum_numbers.iter().map(|&i| momentum::<R>(2 * i - (n - 1), self.m)).collect()
    }

    /// `u^2 = e^{i theta}`, the ket parametrization.
    pub fn u_sq<R: Real>(&self) -> Vec<Complex<R>> {
        self.roots::<R>().into_iter().map(unit).collect()
    }

    /// `v^{-2} = e^{-i theta}`, the bra parametrization.
    pub fn v_inv_sq<R: Real>(&self) -> Vec<Complex<R>> {
        self.roots::<R>().into_iter().map(|t| unit(-t)).collect()
    }
}

/// `2 pi (half_index / 2) / (M + 1)`; half-integer shifts stay integral.
fn momentum<R: Real>(half_index: i64, m: usize) -> R {
    R::PI() * R::from_f64_lossy(half_index as f64) / R::from_f64_lossy((m + 1) as f64)
}

fn unit<R: Real>(theta: R) -> Complex<R> {
    Complex::new(theta.cos(), theta.sin())
}

/// `I_j = N - j`.
pub fn ground_state(m: usize, n: usize) -> Result<BetheState, ChainError> {
    ChainParams::new(m, n)?;
    BetheState::new(m, (0..n as i64).rev().collect())
}

/// `-sum cos theta_j`.
pub fn energy<R: Real>(s: &BetheState) -> R {
    s.roots::<R>().into_iter().fold(R::zero(), |acc, t| acc - t.cos())
}

/// Closed form `-sin(pi N/(M+1)) / sin(pi/(M+1))` of the ground-state energy.
pub fn ground_energy_closed_form(m: usize, n: usize) -> f64 {
    let a = std::f64::consts::PI / (m + 1) as f64;
    -(a * n as f64).sin() / a.sin()
}

/// Every admissible quantum-number tuple, in lexicographic order of the
/// decreasing tuples.
pub fn enumerate_bethe_states(m: usize, n: usize) -> Result<Vec<BetheState>, ChainError> {
    let p = ChainParams::new(m, n)?;
    let needed = p.sector_size();
    if needed > SPECTRAL_BUDGET {
        return Err(ChainError::BudgetExceeded { needed, budget: SPECTRAL_BUDGET });
    }
    Ok(decreasing_tuples(m, n).into_iter().map(|q| BetheState { m, quantum_numbers: q }).collect())
}

/// Strictly decreasing `n`-tuples from `0..=m`, lexicographically ascending.
pub fn decreasing_tuples(m: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(top: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (left as i64 - 1)..=top {
            cur.push(v);
            rec(v - 1, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(m as i64, n, &mut cur, &mut out);
    out
}

/// `(M+1)^N / prod_{m<l} 2 (1 - cos(2 pi (I_l - I_m)/(M+1)))`.
pub fn norm_squared<R: Real>(s: &BetheState) -> R {
    let q = s.quantum_numbers();
    let sites = R::from_f64_lossy(s.sites_f64());
    let two = R::from_f64_lossy(2.0);
    let mut den = R::one();
    for a in 0..q.len() {
        for b in a + 1..q.len() {
            let t = momentum::<R>(2 * (q[b] - q[a]), s.m);
            den = den * two * (R::one() - t.cos());
        }
    }
    Float::powi(sites, q.len() as i32) / den
}

impl BetheState {
    fn sites_f64(&self) -> f64 {
        (self.m + 1) as f64
    }
}

/// `<Psi(v)|Psi(u)> = det(T) / (V(u^2) V(v^{-2}))` with
/// `T_kj = sum_{m=0}^{M} (u_k^2 v_j^{-2})^m`.
pub fn scalar_product<S: Scalar>(v_inv_sq: &[S], u_sq: &[S], m: usize) -> Result<S, ChainError> {
    ferro_formfactor(v_inv_sq, u_sq, 0, m)
}

/// `<Psi(v)| Pi_n |Psi(u)>`: the restricted Cauchy sum with parts between
/// `n` and `K`. Zero when `n > K`.
pub fn ferro_formfactor<S: Scalar>(v_inv_sq: &[S], u_sq: &[S], n: usize, m: usize) -> Result<S, ChainError> {
    let p = ChainParams::new(m, u_sq.len())?;
    if v_inv_sq.len() != u_sq.len() {
        return Err(ChainError::Domain("bra and ket need the same number of particles".into()));
    }
    if n > p.k() {
        return Ok(S::zero());
    }
    Ok(binet_cauchy_kernel(p.k() as i64, n as i64, v_inv_sq, u_sq)?)
}

/// Emptiness formation probability `det(1 - K_n)` on a Bethe state, with
/// `K_n(a, b) = e^{i(n-1)(a-b)/2} sin(n(a-b)/2) / ((M+1) sin((a-b)/2))` and
/// diagonal `n/(M+1)`.
pub fn efp_formfactor<R: Real>(s: &BetheState, n: usize) -> R {
    efp_determinant::<R>(s, n).re
}

fn efp_determinant<R: Real>(s: &BetheState, n: usize) -> Complex<R> {
    let theta = s.roots::<R>();
    let sites = R::from_f64_lossy(s.sites_f64());
    let nf = R::from_f64_lossy(n as f64);
    let half = R::from_f64_lossy(0.5);
    let m = SquareMatrix::from_fn(theta.len(), |a, b| {
        let kernel = if a == b {
            Complex::new(nf / sites, R::zero())
        } else {
            let d = theta[a] - theta[b];
            let phase = unit((nf - R::one()) * d * half);
            phase * ((nf * d * half).sin() / (sites * (d * half).sin()))
        };
        let delta = if a == b { Complex::<R>::one() } else { Complex::<R>::zero() };
        delta - kernel
    });
    det_lu(m).value
}

/// `det(T-bar) / (V(u^2) V(v^{-2}))` with `N` bra points and `N - n` ket
/// points: `<Psi(v_N)| F_n |Psi(u_{N-n})>`.
pub fn domain_wall_formfactor<S: Scalar>(v_inv_sq: &[S], u_sq: &[S], n: usize, m: usize) -> Result<S, ChainError> {
    let p = ChainParams::new(m, v_inv_sq.len())?;
    if u_sq.len() + n != v_inv_sq.len() {
        return Err(ChainError::Domain(format!(
            "domain wall needs N = {} bra points and N - n = {} ket points",
            v_inv_sq.len(),
            v_inv_sq.len().saturating_sub(n)
        )));
    }
    Ok(block_kernel(p.k() as i64, n, v_inv_sq, u_sq)?)
}

/// Single-walker propagator `<k| e^{-beta H} |l>` on the periodic ring:
/// `(1/(M+1)) sum_s e^{beta cos phi_s} e^{i phi_s (k-l)}`, `phi_s = 2 pi s/(M+1)`.
pub fn walker_amplitude<R: Real>(k: usize, l: usize, beta: Complex<R>, m: usize) -> Complex<R> {
    AmplitudeTable::new(m, 1, beta).get(k, l)
}

/// Propagators `F_{k;l}(beta)` for `N` walkers, tabulated by `k - l`.
///
/// With `N` walkers the single-particle momenta live on the grid
/// `2 pi (s - (N-1)/2)/(M+1)`, periodic for odd `N` and antiperiodic for
/// even `N`; this twist is what makes the `N x N` determinant of these
/// entries equal the many-walker amplitude of the spin chain.
#[derive(Clone, Debug)]
pub struct AmplitudeTable<R> {
    m: usize,
    by_offset: Vec<Complex<R>>,
}

impl<R: Real> AmplitudeTable<R> {
    pub fn new(m: usize, particles: usize, beta: Complex<R>) -> Self {
        Self::with_offset(m, particles, beta, R::zero())
    }

    /// Entries multiplied by `e^{-beta offset}`, i.e. the propagator of
    /// `H + offset`. Large `beta` needs `offset = 1` to stay finite.
    pub fn with_offset(m: usize, particles: usize, beta: Complex<R>, offset: R) -> Self {
        let sites = m + 1;
        let shift = particles.saturating_sub(1) as i64;
        let weights: Vec<(R, Complex<R>)> = (0..sites as i64)
            .map(|s| {
                let phi = momentum::<R>(2 * s - shift, m);
                (phi, (beta * (phi.cos() - offset)).exp())
            })
            .collect();
        let norm = R::from_f64_lossy(sites as f64);
        let by_offset = (-(m as i64)..=m as i64)
            .map(|d| {
                let d = R::from_f64_lossy(d as f64);
                weights.iter().fold(Complex::<R>::zero(), |acc, &(phi, w)| acc + w * unit(phi * d)) / norm
            })
            .collect();
        AmplitudeTable { m, by_offset }
    }

    pub fn get(&self, k: usize, l: usize) -> Complex<R> {
        self.by_offset[(k as i64 - l as i64 + self.m as i64) as usize]
    }
}

/// `det(F_{mu^L_k; mu^R_l})`, the amplitude for walkers to go from `mu^R`
/// to `mu^L`.
pub fn walker_amplitude_multi<R: Real>(
    mu_l: &StrictPartition,
    mu_r: &StrictPartition,
    beta: Complex<R>,
    m: usize,
) -> Result<Complex<R>, ChainError> {
    if mu_l.len() != mu_r.len() {
        return Err(ChainError::Domain("endpoint tuples differ in length".into()));
    }
    if mu_l.parts().iter().chain(mu_r.parts()).any(|&x| x > m as i64) {
        return Err(ChainError::Domain(format!("walker positions must lie in 0..={m}")));
    }
    let table = AmplitudeTable::new(m, mu_l.len(), beta);
    let (a, b) = (mu_l.parts(), mu_r.parts());
    let mat = SquareMatrix::from_fn(a.len(), |i, j| table.get(a[i] as usize, b[j] as usize));
    Ok(det_lu(mat).value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Determinant,
    SpectralSum,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Determinant => "determinant",
            Method::SpectralSum => "spectral_sum",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "R: Serialize")]
pub struct CorrelatorResult<R = f64> {
    pub value: Complex<R>,
    pub method: Method,
    pub m: usize,
    pub n_particles: usize,
    pub n: usize,
    pub beta: Complex<R>,
    /// Set when an LU pivot ratio exceeded the warning threshold.
    pub ill_conditioned: bool,
}

/// Persistence of a ferromagnetic string of length `n` in the `N`-particle
/// ground state, by the determinant of walker sums:
/// `e^{beta E_g}/(M+1)^N det(sum_{k,l=n}^{M} F_{k;l} e^{i(l theta_i - k theta_j)})`.
pub fn persistence_ferro<R: Real>(
    m: usize,
    particles: usize,
    n: usize,
    beta: Complex<R>,
) -> Result<CorrelatorResult<R>, ChainError> {
    let g = ground_state(m, particles)?;
    check_string(m, n)?;
    let done = |value, ill| CorrelatorResult {
        value,
        method: Method::Determinant,
        m,
        n_particles: particles,
        n,
        beta,
        ill_conditioned: ill,
    };
    if n == 0 {
        return Ok(done(Complex::<R>::one(), false));
    }
    let table = AmplitudeTable::with_offset(m, particles, beta, R::one());
    let theta = g.roots::<R>();
    let mat = SquareMatrix::from_fn(particles, |i, j| {
        let mut acc = Complex::<R>::zero();
        for l in n..=m {
            let left = unit(R::from_f64_lossy(l as f64) * theta[i]);
            let mut inner = Complex::<R>::zero();
            for k in n..=m {
                inner = inner + table.get(k, l) * unit(-R::from_f64_lossy(k as f64) * theta[j]);
            }
            acc = acc + left * inner;
        }
        acc
    });
    let lu = det_lu(mat);
    let shift = R::from_f64_lossy(particles as f64);
    let pref =
        (beta * (energy::<R>(&g) + shift)).exp() / Float::powi(R::from_f64_lossy((m + 1) as f64), particles as i32);
    Ok(done(lu.value * pref, lu.ill_conditioned()))
}

fn check_string(m: usize, n: usize) -> Result<(), ChainError> {
    if n > m + 1 {
        return Err(ChainError::Domain(format!("string length {n} exceeds the {} sites", m + 1)));
    }
    Ok(())
}

fn spectral_states(m: usize, particles: usize) -> Result<Vec<BetheState>, ChainError> {
    enumerate_bethe_states(m, particles)
}

/// Ordered sum of per-state terms computed in parallel.
fn ordered_sum<R: Real>(terms: Vec<Complex<R>>) -> Complex<R> {
    terms.into_iter().fold(Complex::<R>::zero(), |a, b| a + b)
}

/// The same correlator as [`persistence_ferro`] from the resolution of the
/// identity: a sum over all `C(M+1, N)` Bethe states of
/// `e^{-beta(E - E_g)} |V(e^{i theta}) P_{K/n}(e^{-i theta}, e^{i theta_g})|^2`
/// divided by `N_g^2 (M+1)^N`.
pub fn persistence_ferro_spectral<R: Real>(
    m: usize,
    particles: usize,
    n: usize,
    beta: Complex<R>,
) -> Result<CorrelatorResult<R>, ChainError> {
    let g = ground_state(m, particles)?;
    check_string(m, n)?;
    let done = |value| CorrelatorResult {
        value,
        method: Method::SpectralSum,
        m,
        n_particles: particles,
        n,
        beta,
        ill_conditioned: false,
    };
    if n == 0 {
        return Ok(done(Complex::<R>::one()));
    }
    let states = spectral_states(m, particles)?;
    let eg = energy::<R>(&g);
    let x = g.u_sq::<R>();
    let terms: Vec<Complex<R>> = states
        .par_iter()
        .map(|s| -> Result<Complex<R>, ChainError> {
            let y = s.v_inv_sq::<R>();
            let p = ferro_formfactor(&y, &x, n, m)?;
            let v = vandermonde(&s.u_sq::<R>());
            let weight = (-beta * (energy::<R>(s) - eg)).exp();
            Ok(weight * Complex::from((v * p).norm_sqr()))
        })
        .collect::<Result<_, _>>()?;
    let sites = R::from_f64_lossy((m + 1) as f64);
    let den = norm_squared::<R>(&g) * Float::powi(sites, particles as i32);
    Ok(done(ordered_sum(terms) / den))
}

/// Persistence of a domain wall of length `n` created on top of the
/// `(N-n)`-particle ground state, by an `N x N` block determinant.
///
/// Rows follow the bra side: the first `N - n` rows belong to the ground
/// state roots (entries summed against `e^{-i k theta_j}`), the last `n`
/// rows to the fixed sites `n-1, ..., 0`; columns follow the ket side in
/// the same pattern. `F` is the `N`-walker propagator.
pub fn persistence_domain_wall<R: Real>(
    m: usize,
    particles: usize,
    n: usize,
    beta: Complex<R>,
) -> Result<CorrelatorResult<R>, ChainError> {
    if n > particles {
        return Err(ChainError::Domain(format!("wall length {n} exceeds N = {particles}")));
    }
    ChainParams::new(m, particles)?;
    let g = ground_state(m, particles - n)?;
    let done = |value, ill| CorrelatorResult {
        value,
        method: Method::Determinant,
        m,
        n_particles: particles,
        n,
        beta,
        ill_conditioned: ill,
    };
    if n == 0 {
        return Ok(done(Complex::<R>::one(), false));
    }
    let table = AmplitudeTable::with_offset(m, particles, beta, R::one());
    let theta = g.roots::<R>();
    let free = theta.len();
    let phase = |k: usize, t: R| unit(R::from_f64_lossy(k as f64) * t);
    let mat = SquareMatrix::from_fn(particles, |r, c| match (r < free, c < free) {
        (true, true) => {
            let mut acc = Complex::<R>::zero();
            for k in 0..=m {
                let bra = phase(k, -theta[r]);
                let mut inner = Complex::<R>::zero();
                for l in 0..=m {
                    inner = inner + table.get(k, l) * phase(l, theta[c]);
                }
                acc = acc + bra * inner;
            }
            acc
        }
        (true, false) => {
            let l = particles - 1 - c;
            (0..=m).fold(Complex::<R>::zero(), |acc, k| acc + phase(k, -theta[r]) * table.get(k, l))
        }
        (false, true) => {
            let k = particles - 1 - r;
            (0..=m).fold(Complex::<R>::zero(), |acc, l| acc + table.get(k, l) * phase(l, theta[c]))
        }
        (false, false) => table.get(particles - 1 - r, particles - 1 - c),
    });
    let lu = det_lu(mat);
    let sites = R::from_f64_lossy((m + 1) as f64);
    let shift = R::from_f64_lossy(particles as f64);
    let pref = (beta * (energy::<R>(&g) + shift)).exp() / Float::powi(sites, free as i32);
    Ok(done(lu.value * pref, lu.ill_conditioned()))
}

/// The same correlator as [`persistence_domain_wall`] from the resolution
/// of the identity in the `N`-particle sector:
/// `sum e^{-beta(E_N - E_{N-n})} |V(e^{i theta})|^2 |Sigma|^2 / ((M+1)^N N^2_{N-n})`
/// where `Sigma = sum_{lambda in K^{N-n}} S_{lambda-hat}(e^{-i theta}) S_lambda(e^{i theta_g})`.
pub fn persistence_domain_wall_spectral<R: Real>(
    m: usize,
    particles: usize,
    n: usize,
    beta: Complex<R>,
) -> Result<CorrelatorResult<R>, ChainError> {
    if n > particles {
        return Err(ChainError::Domain(format!("wall length {n} exceeds N = {particles}")));
    }
    let p = ChainParams::new(m, particles)?;
    let g = ground_state(m, particles - n)?;
    let done = |value| CorrelatorResult {
        value,
        method: Method::SpectralSum,
        m,
        n_particles: particles,
        n,
        beta,
        ill_conditioned: false,
    };
    if n == 0 {
        return Ok(done(Complex::<R>::one()));
    }
    let states = spectral_states(m, particles)?;
    let eg = energy::<R>(&g);
    let x = g.u_sq::<R>();
    let k = p.k() as i64;
    let terms: Vec<Complex<R>> = states
        .par_iter()
        .map(|s| -> Result<Complex<R>, ChainError> {
            let sigma = prop2_determinant(k, n, &s.v_inv_sq::<R>(), &x)?;
            let v = vandermonde(&s.u_sq::<R>());
            let weight = (-beta * (energy::<R>(s) - eg)).exp();
            Ok(weight * Complex::from((v * sigma).norm_sqr()))
        })
        .collect::<Result<_, _>>()?;
    let sites = R::from_f64_lossy((m + 1) as f64);
    let den = norm_squared::<R>(&g) * Float::powi(sites, particles as i32);
    Ok(done(ordered_sum(terms) / den))
}
