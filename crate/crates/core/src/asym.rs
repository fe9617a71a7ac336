//! Barnes G, the Gaussian Mehta integral and low-temperature estimates of
//! the two persistence correlators.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::boxcount::{a_cspp, ln_count, macmahon};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymError {
    #[error("argument out of range: {0}")]
    Domain(String),
}

/// Glaisher-Kinkelin constant.
pub const GLAISHER: f64 = 1.282_427_129_100_622_6;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// `G(n+1) = prod_{k=1}^{n-1} k!`, exactly, for `0 <= n <= 40`.
pub fn barnes_g_integer(n: i64) -> Result<BigInt, AsymError> {
    if !(0..=40).contains(&n) {
        return Err(AsymError::Domain(format!("exact Barnes G takes 0 <= n <= 40, got {n}")));
    }
    let mut g = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..n {
        fact *= k;
        g *= &fact;
    }
    Ok(g)
}

/// `log G(z+1)` for real `z >= 0`.
///
/// Integer arguments go through the exact value up to 40, then `log G(k+1) = sum_{j<=k} log Gamma(j)`;
/// others are shifted up to `z >= 30`, where [`barnes_expansion`] plus the
/// `-1/(240 z^2)` correction is accurate to about `1e-10`.
pub fn log_barnes_g(z: f64) -> Result<f64, AsymError> {
    if z.is_nan() || z < 0.0 || z.is_infinite() {
        return Err(AsymError::Domain(format!("log G(z+1) needs finite z >= 0, got {z}")));
    }
    if z.fract() == 0.0 && z <= 40.0 {
        return Ok(ln_count(&barnes_g_integer(z as i64)?));
    }
    if z.fract() == 0.0 && z <= 1e7 {
        return Ok((1..=z as u64).map(|k| ln_gamma(k as f64)).sum());
    }
    let mut w = z;
    let mut correction = 0.0;
    while w < 30.0 {
        w += 1.0;
        correction += ln_gamma(w);
    }
    Ok(barnes_expansion(w) - 1.0 / (240.0 * w * w) - correction)
}

/// Leading asymptotic form
/// `(z^2/2 - 1/12) log z - 3 z^2/4 + (z/2) log 2 pi + 1/12 - log A`.
pub fn barnes_expansion(z: f64) -> f64 {
    (z * z / 2.0 - 1.0 / 12.0) * z.ln() - 0.75 * z * z + 0.5 * z * LN_2PI + 1.0 / 12.0 - GLAISHER.ln()
}

/// `I_N = G(N+1) / (2 pi)^{N/2}`.
pub fn mehta_integral(n: u32) -> f64 {
    phi_n(n).exp()
}

/// `phi_N = sum_{k=1}^{N} log(Gamma(k) / sqrt(2 pi))`.
pub fn phi_n(n: u32) -> f64 {
    (1..=n).map(|k| ln_gamma(k as f64) - 0.5 * LN_2PI).sum()
}

/// `(N^2/2) log N - 3 N^2/4`.
pub fn phi_n_leading(n: u32) -> f64 {
    let n = n as f64;
    0.5 * n * n * n.ln() - 0.75 * n * n
}

/// `N^2 log(2 pi/(M+1)) - (N^2/2) log beta + 3 phi_N`.
pub fn big_phi(n: u32, m: usize, beta: f64) -> f64 {
    let n2 = (n * n) as f64;
    n2 * (std::f64::consts::TAU / (m + 1) as f64).ln() - 0.5 * n2 * beta.ln() + 3.0 * phi_n(n)
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const GAUSS_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gauss_kronrod(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = GK_WEIGHTS[7] * f(c);
    let mut gauss = GAUSS_WEIGHTS[3] * f(c);
    for i in 0..7 {
        let s = f(c - h * GK_NODES[i]) + f(c + h * GK_NODES[i]);
        kronrod += GK_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive 7/15-point Gauss-Kronrod with absolute tolerance `tol`, shared
/// among subintervals in proportion to their width.
pub fn integrate(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, density: f64, depth: u32) -> f64 {
        let (v, err) = gauss_kronrod(f, a, b);
        if err <= density * (b - a) || depth == 0 {
            return v;
        }
        let c = 0.5 * (a + b);
        rec(f, a, c, density, depth - 1) + rec(f, c, b, density, depth - 1)
    }
    rec(f, a, b, tol / (b - a), 16)
}

/// The Gaussian Mehta integral by nested adaptive quadrature on
/// `[-cutoff, cutoff]^N`. Practical for `N <= 3`.
pub fn mehta_quadrature(n: u32, tol: f64) -> f64 {
    const CUTOFF: f64 = 13.0;
    fn nested(xs: &mut Vec<f64>, left: u32, tol: f64) -> f64 {
        if left == 0 {
            let mut v = (-0.5 * xs.iter().map(|x| x * x).sum::<f64>()).exp();
            for a in 0..xs.len() {
                for b in a + 1..xs.len() {
                    v *= (xs[a] - xs[b]).powi(2);
                }
            }
            return v;
        }
        // Inner integrals run tighter so the outer rule sees a smooth integrand.
        let mut inner = |x: f64| {
            xs.push(x);
            let v = nested(xs, left - 1, tol * 1e-2);
            xs.pop();
            v
        };
        integrate(&mut inner, -CUTOFF, CUTOFF, tol)
    }
    let raw = nested(&mut Vec::with_capacity(n as usize), n, tol);
    let factorial: f64 = (1..=n).map(f64::from).product();
    raw / factorial / std::f64::consts::TAU.powi(n as i32)
}

/// `log A^cspp(N, N, P)` through Barnes G values.
pub fn ln_a_cspp_barnes(n: i64, p: i64) -> Result<f64, AsymError> {
    if n < 1 || p < n - 1 {
        return Err(AsymError::Domain(format!("need N >= 1 and P >= N - 1, got N={n}, P={p}")));
    }
    let lg = |k: i64| log_barnes_g((k - 1) as f64);
    Ok(2.0 * lg(n + 1)? + lg(p + 2 + n)? + lg(p + 2 - n)? - lg(2 * n + 1)? - 2.0 * lg(p + 2)?)
}

/// `A^cspp(N, N, P) = G(N+1)^2 G(P+2+N) G(P+2-N) / (G(2N+1) G(P+2)^2)`
/// with exact integer `G`; needs `P + N + 1 <= 41`.
pub fn a_cspp_barnes(n: i64, p: i64) -> Result<BigInt, AsymError> {
    if n < 1 || p < n - 1 {
        return Err(AsymError::Domain(format!("need N >= 1 and P >= N - 1, got N={n}, P={p}")));
    }
    let g = |k: i64| barnes_g_integer(k - 1);
    let gn = g(n + 1)?;
    let gp = g(p + 2)?;
    let num = &gn * &gn * g(p + 2 + n)? * g(p + 2 - n)?;
    let den = g(2 * n + 1)? * &gp * &gp;
    Ok(num / den)
}

/// `log A(L, N, P)` through Barnes G values.
pub fn ln_macmahon_barnes(l: i64, n: i64, p: i64) -> Result<f64, AsymError> {
    if l < 0 || n < 0 || p < 0 {
        return Err(AsymError::Domain("box sides must be non-negative".into()));
    }
    let lg = |k: i64| log_barnes_g((k - 1) as f64);
    Ok(lg(l + 1)? + lg(n + 1)? + lg(l + n + p + 1)? + lg(p + 1)? - lg(l + n + 1)? - lg(l + p + 1)? - lg(n + p + 1)?)
}

/// Exact counts are used up to this many box cells; beyond, Barnes G.
const EXACT_CELLS: i64 = 40_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticPieces {
    /// `2 log A`, the squared box count.
    pub amplitude: f64,
    /// `N^2 log(2 pi/(M+1))`.
    pub lattice: f64,
    /// `-(N^2/2) log beta`.
    pub critical: f64,
    /// `3 phi_N`.
    pub mehta: f64,
}

impl AsymptoticPieces {
    pub fn total(&self) -> f64 {
        self.amplitude + self.lattice + self.critical + self.mehta
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub log_value: f64,
    pub pieces: AsymptoticPieces,
    /// The leading-order law with its undetermined constants set to 1.
    /// Only differences and slopes of this number are meaningful.
    pub leading_law: f64,
    pub m: usize,
    pub n_particles: usize,
    pub n: usize,
    pub beta: f64,
}

fn check(m: usize, particles: usize, beta: f64) -> Result<(), AsymError> {
    if particles < 1 || particles > m + 1 {
        return Err(AsymError::Domain(format!("need 1 <= N <= M + 1, got N={particles}, M={m}")));
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(AsymError::Domain(format!("need beta > 0, got {beta}")));
    }
    Ok(())
}

fn estimate(amplitude: f64, leading_law: f64, m: usize, particles: usize, n: usize, beta: f64) -> AsymptoticEstimate {
    let n2 = (particles * particles) as f64;
    let pieces = AsymptoticPieces {
        amplitude,
        lattice: n2 * (std::f64::consts::TAU / (m + 1) as f64).ln(),
        critical: -0.5 * n2 * beta.ln(),
        mehta: 3.0 * phi_n(particles as u32),
    };
    AsymptoticEstimate { log_value: pieces.total(), pieces, leading_law, m, n_particles: particles, n, beta }
}

/// `log T ~ 2 log A^cspp(N, N, M-n) + Phi(N, M, beta)`.
pub fn ferro_asymptotic(m: usize, particles: usize, n: usize, beta: f64) -> Result<AsymptoticEstimate, AsymError> {
    check(m, particles, beta)?;
    let (big_n, p) = (particles as i64, m as i64 - n as i64);
    if p < big_n - 1 {
        return Err(AsymError::Domain(format!("string of length {n} leaves no room for {particles} particles")));
    }
    let ln_a = if big_n * big_n * (p + 1) <= EXACT_CELLS {
        ln_count(&a_cspp(big_n, p).expect("domain checked"))
    } else {
        ln_a_cspp_barnes(big_n, p)?
    };
    let (nf, mf, pf) = (particles as f64, m as f64, p as f64);
    let law = nf * nf * (pf * pf / (mf * (nf * beta).sqrt())).ln();
    Ok(estimate(2.0 * ln_a, law, m, particles, n, beta))
}

/// `log F ~ 2 log A(N-n, N, M-N+1) + Phi(N, M, beta)`.
pub fn domain_wall_asymptotic(
    m: usize,
    particles: usize,
    n: usize,
    beta: f64,
) -> Result<AsymptoticEstimate, AsymError> {
    check(m, particles, beta)?;
    if n > particles {
        return Err(AsymError::Domain(format!("wall length {n} exceeds N = {particles}")));
    }
    let (l, big_n, p) = ((particles - n) as i64, particles as i64, (m + 1 - particles) as i64);
    let ln_a = if l * big_n * (p + 1) <= EXACT_CELLS {
        ln_count(&macmahon(l, big_n, p))
    } else {
        ln_macmahon_barnes(l, big_n, p)?
    };
    let (nf, mf, nn) = (particles as f64, m as f64, n as f64);
    let law = nf * nf * (nf.powf(1.5) / (mf * beta.sqrt())).ln()
        + if n < particles { 2.0 * nf * (nf - nn) * ((mf - nn) / (2.0 * nf - nn)).ln() } else { 0.0 };
    Ok(estimate(2.0 * ln_a, law, m, particles, n, beta))
}

/// Whether the leading law predicts a decreasing ferromagnetic persistence:
/// `T < N M^2 / (c^2 (M-n)^4)`. The constant `c` is not fixed by theory and
/// must be supplied.
pub fn ferro_decreasing_regime(m: usize, particles: usize, n: usize, temperature: f64, c: f64) -> bool {
    let (mf, p) = (m as f64, m as f64 - n as f64);
    temperature < particles as f64 * mf * mf / (c * c * p.powi(4))
}

/// Central finite difference of `log estimate` in `log beta`.
pub fn ferro_log_slope(m: usize, particles: usize, n: usize, beta: f64, h: f64) -> Result<f64, AsymError> {
    let up = ferro_asymptotic(m, particles, n, beta * h.exp())?.log_value;
    let down = ferro_asymptotic(m, particles, n, beta * (-h).exp())?.log_value;
    Ok((up - down) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_barnes() {
        assert_eq!(barnes_g_integer(1).unwrap(), BigInt::from(1));
        assert_eq!(barnes_g_integer(3).unwrap(), BigInt::from(2));
        assert_eq!(barnes_g_integer(4).unwrap(), BigInt::from(12));
        assert!(barnes_g_integer(41).is_err());
        assert_eq!(log_barnes_g(1.0).unwrap(), 0.0);
    }

    #[test]
    fn shifted_expansion_is_accurate() {
        for z in [4.0, 10.0, 25.0] {
            let exact = log_barnes_g(z).unwrap();
            let shifted = log_barnes_g(z + 1e-9).unwrap();
            assert!((exact - shifted).abs() < 1e-7, "z={z}: {exact} {shifted}");
        }
        assert!((barnes_expansion(4.0) - 12f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn mehta_small() {
        assert!((mehta_integral(1) - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert!((mehta_integral(2) - 1.0 / std::f64::consts::TAU).abs() < 1e-15);
        assert!((mehta_quadrature(1, 1e-12) - mehta_integral(1)).abs() < 1e-10);
    }

    #[test]
    fn pieces_sum() {
        let e = ferro_asymptotic(100, 5, 3, 50.0).unwrap();
        assert_eq!(e.log_value, e.pieces.total());
        let d = domain_wall_asymptotic(30, 3, 1, 60.0).unwrap();
        assert_eq!(d.log_value, d.pieces.total());
    }
}
