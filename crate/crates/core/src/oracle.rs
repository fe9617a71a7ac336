//! Exact diagonalization on small chains. Everything here is built from
//! the spin Hamiltonian directly and serves as ground truth for the closed
//! forms in [`crate::chain`].
//!
//! Configurations are ordered colexicographically: by the bitmask of
//! occupied sites, ascending.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::chain::{decreasing_tuples, ground_state, BetheState};
use crate::combinat::{Partition, StrictPartition};
use crate::schur::{elementary_all, jacobi_trudi_from_elementary};

pub const SECTOR_BUDGET: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("sector of {needed} configurations exceeds the budget of {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("invalid oracle input: {0}")]
    Domain(String),
}

#[derive(Clone, Debug)]
pub struct SectorBasis {
    m: usize,
    n: usize,
    configs: Vec<Vec<i64>>,
    index: HashMap<u64, usize>,
}

fn mask(config: &[i64]) -> u64 {
    config.iter().fold(0u64, |acc, &s| acc | 1 << s)
}

impl SectorBasis {
    pub fn new(m: usize, n: usize) -> Result<Self, OracleError> {
        if m >= 63 || n > m + 1 {
            return Err(OracleError::Domain(format!("no sector with M = {m}, N = {n}")));
        }
        let needed = crate::qexact::binomial(m as i64 + 1, n as i64);
        let needed: usize = needed.try_into().unwrap_or(usize::MAX);
        if needed > SECTOR_BUDGET {
            return Err(OracleError::BudgetExceeded { needed, budget: SECTOR_BUDGET });
        }
        let mut configs = decreasing_tuples(m, n);
        configs.sort_by_key(|c| mask(c));
        let index = configs.iter().enumerate().map(|(i, c)| (mask(c), i)).collect();
        Ok(SectorBasis { m, n, configs, index })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configurations(&self) -> &[Vec<i64>] {
        &self.configs
    }

    pub fn index_of(&self, config: &[i64]) -> Option<usize> {
        self.index.get(&mask(config)).copied()
    }
}

/// The `N`-down-spin block of `H = -1/2 sum_s (s+_s s-_{s+1} + s-_s s+_{s+1})`
/// on the ring `0..=M`.
pub fn build_hamiltonian(m: usize, n: usize) -> Result<(SectorBasis, DMatrix<f64>), OracleError> {
    let basis = SectorBasis::new(m, n)?;
    let dim = basis.len();
    let mut h = DMatrix::zeros(dim, dim);
    if m == 0 {
        return Ok((basis, h));
    }
    for (col, config) in basis.configs.iter().enumerate() {
        let occ = mask(config);
        for s in 0..=m {
            let t = (s + 1) % (m + 1);
            let (a, b) = (occ >> s & 1, occ >> t & 1);
            if a != b {
                let moved = occ ^ (1 << s) ^ (1 << t);
                let row = basis.index[&moved];
                h[(row, col)] -= 0.5;
            }
        }
    }
    Ok((basis, h))
}

/// A sector with its spectral decomposition, ready to exponentiate.
pub struct Sector {
    pub basis: SectorBasis,
    pub hamiltonian: DMatrix<f64>,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl Sector {
    pub fn new(m: usize, n: usize) -> Result<Self, OracleError> {
        let (basis, hamiltonian) = build_hamiltonian(m, n)?;
        let eigen = SymmetricEigen::new(hamiltonian.clone());
        Ok(Sector { basis, hamiltonian, eigen })
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigen.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// `e^{-beta H}`.
    pub fn propagator(&self, beta: Complex64) -> DMatrix<Complex64> {
        let vecs = self.eigen.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let weights = self.eigen.eigenvalues.map(|e| (-beta * e).exp());
        let scaled = DMatrix::from_fn(vecs.nrows(), vecs.ncols(), |i, j| vecs[(i, j)] * weights[j]);
        scaled * vecs.transpose()
    }
}

/// Amplitudes `S_lambda(x)` with `lambda = mu - delta_N` at each
/// configuration `mu`. Pass `u^2` for a ket and `v^{-2}` for a bra.
pub fn build_state_vector(x: &[Complex64], basis: &SectorBasis) -> Result<DVector<Complex64>, OracleError> {
    if x.len() != basis.n {
        return Err(OracleError::Domain(format!("{} points for an N = {} sector", x.len(), basis.n)));
    }
    let e = elementary_all(x);
    let n = basis.n as i64;
    let amps = basis.configs.iter().map(|mu| {
        let lambda: Vec<i64> = mu.iter().enumerate().map(|(k, &p)| p - (n - 1 - k as i64)).collect();
        let lambda = Partition::new(lambda).expect("strict tuple minus staircase is a partition");
        jacobi_trudi_from_elementary(&lambda, &e)
    });
    Ok(DVector::from_iterator(basis.len(), amps))
}

/// `sum_i bra_i a_i`, no conjugation: bras carry their own parametrization.
pub fn pair(bra: &DVector<Complex64>, ket: &DVector<Complex64>) -> Complex64 {
    bra.iter().zip(ket.iter()).map(|(a, b)| a * b).sum()
}

/// Diagonal of the projector onto configurations with sites `0..n` up.
pub fn string_projector(basis: &SectorBasis, n: usize) -> Vec<bool> {
    basis.configs.iter().map(|c| c.iter().all(|&s| s >= n as i64)).collect()
}

/// Matrix of `prod_{l<n} s-_l` from the `(N-n)`-sector into the
/// `N`-sector. Columns with a down spin already in `0..n` are zero.
pub fn wall_map(from: &SectorBasis, to: &SectorBasis, n: usize) -> Result<DMatrix<f64>, OracleError> {
    if from.m != to.m || from.n + n != to.n {
        return Err(OracleError::Domain("wall map needs sectors N - n and N on one chain".into()));
    }
    let mut f = DMatrix::zeros(to.len(), from.len());
    let fill: u64 = (1u64 << n) - 1;
    for (col, c) in from.configs.iter().enumerate() {
        let occ = mask(c);
        if occ & fill == 0 {
            f[(to.index[&(occ | fill)], col)] = 1.0;
        }
    }
    Ok(f)
}

fn apply_projector(p: &[bool], v: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_iterator(v.len(), v.iter().zip(p).map(|(x, &keep)| if keep { *x } else { Complex64::new(0.0, 0.0) }))
}

fn bra_ket(g: &BetheState, basis: &SectorBasis) -> Result<(DVector<Complex64>, DVector<Complex64>), OracleError> {
    Ok((build_state_vector(&g.v_inv_sq::<f64>(), basis)?, build_state_vector(&g.u_sq::<f64>(), basis)?))
}

fn ground(m: usize, n: usize) -> Result<BetheState, OracleError> {
    ground_state(m, n).map_err(|e| OracleError::Domain(e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleKind {
    Ferro { m: usize, particles: usize, n: usize },
    DomainWall { m: usize, particles: usize, n: usize },
    Walker { m: usize, mu_l: StrictPartition, mu_r: StrictPartition },
}

pub fn oracle_correlator(kind: &OracleKind, beta: Complex64) -> Result<Complex64, OracleError> {
    match kind {
        OracleKind::Ferro { m, particles, n } => oracle_ferro(*m, *particles, *n, beta),
        OracleKind::DomainWall { m, particles, n } => oracle_domain_wall(*m, *particles, *n, beta),
        OracleKind::Walker { m, mu_l, mu_r } => oracle_walker(*m, mu_l, mu_r, beta),
    }
}

/// `<g| P e^{-beta H} P |g> / <g| e^{-beta H} |g>` with `P` the string projector.
pub fn oracle_ferro(m: usize, particles: usize, n: usize, beta: Complex64) -> Result<Complex64, OracleError> {
    if n > m + 1 {
        return Err(OracleError::Domain(format!("string length {n} exceeds the {} sites", m + 1)));
    }
    let g = ground(m, particles)?;
    let sector = Sector::new(m, particles)?;
    let (bra, ket) = bra_ket(&g, &sector.basis)?;
    let prop = sector.propagator(beta);
    let p = string_projector(&sector.basis, n);
    let num = pair(&apply_projector(&p, &bra), &(&prop * apply_projector(&p, &ket)));
    let den = pair(&bra, &(&prop * &ket));
    Ok(num / den)
}

/// `<g| F^+ e^{-beta H} F |g> / <g| e^{-beta H} |g>` with `g` the
/// `(N-n)`-particle ground state and `F` the wall map.
pub fn oracle_domain_wall(m: usize, particles: usize, n: usize, beta: Complex64) -> Result<Complex64, OracleError> {
    if n > particles {
        return Err(OracleError::Domain(format!("wall length {n} exceeds N = {particles}")));
    }
    let g = ground(m, particles - n)?;
    let small = Sector::new(m, particles - n)?;
    let big = Sector::new(m, particles)?;
    let f = wall_map(&small.basis, &big.basis, n)?.map(|x| Complex64::new(x, 0.0));
    let (bra, ket) = bra_ket(&g, &small.basis)?;
    let num = pair(&(f.transpose() * &big.propagator(beta) * &f * &ket), &bra);
    let den = pair(&bra, &(small.propagator(beta) * &ket));
    Ok(num / den)
}

/// Matrix element of `e^{-beta H}` between two walker configurations.
pub fn oracle_walker(
    m: usize,
    mu_l: &StrictPartition,
    mu_r: &StrictPartition,
    beta: Complex64,
) -> Result<Complex64, OracleError> {
    if mu_l.len() != mu_r.len() {
        return Err(OracleError::Domain("endpoint tuples differ in length".into()));
    }
    let sector = Sector::new(m, mu_l.len())?;
    let find = |mu: &StrictPartition| {
        sector
            .basis
            .index_of(mu.parts())
            .filter(|_| mu.parts().iter().all(|&s| s <= m as i64))
            .ok_or_else(|| OracleError::Domain(format!("{:?} is not a configuration on 0..={m}", mu.parts())))
    };
    let (i, j) = (find(mu_l)?, find(mu_r)?);
    Ok(sector.propagator(beta)[(i, j)])
}

/// `|| H psi - E psi || / || psi ||` for the state vector of `s`.
pub fn eigen_residual(s: &BetheState, sector: &Sector) -> Result<f64, OracleError> {
    let psi = build_state_vector(&s.u_sq::<f64>(), &sector.basis)?;
    let h = sector.hamiltonian.map(|x| Complex64::new(x, 0.0));
    let e = crate::chain::energy::<f64>(s);
    Ok((h * &psi - psi.scale(1.0).map(|x| x * e)).norm() / psi.norm())
}

/// Gram matrix of the normalized Bethe vectors of a sector.
pub fn bethe_gram(m: usize, n: usize) -> Result<DMatrix<Complex64>, OracleError> {
    let basis = SectorBasis::new(m, n)?;
    let states = crate::chain::enumerate_bethe_states(m, n).map_err(|e| OracleError::Domain(e.to_string()))?;
    let mut cols = Vec::with_capacity(states.len());
    for s in &states {
        let v = build_state_vector(&s.u_sq::<f64>(), &basis)?;
        let norm = v.norm();
        cols.push(v.unscale(norm));
    }
    let q = DMatrix::from_columns(&cols);
    Ok(q.adjoint() * q)
}
