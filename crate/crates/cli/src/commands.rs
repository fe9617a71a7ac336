//! `correlator`, `count` and `asym` tables.

use anyhow::{bail, ensure, Result};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use xx0::asym::{big_phi, domain_wall_asymptotic, ferro_asymptotic, AsymptoticEstimate};
use xx0::boxcount::{a_cspp, macmahon, proposition3, zq, zq_cspp};
use xx0::chain::{
    efp_formfactor, ground_state, persistence_domain_wall, persistence_domain_wall_spectral, persistence_ferro,
    persistence_ferro_spectral, walker_amplitude_multi, ChainError, ChainParams, CorrelatorResult, SPECTRAL_BUDGET,
};
use xx0::combinat::StrictPartition;
use xx0::oracle::{oracle_domain_wall, oracle_ferro, oracle_walker, OracleError, SECTOR_BUDGET};
use xx0::qexact::{binomial_determinant, q_binomial_determinant, IndexTuples};

use crate::table::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CorrelatorKind {
    Ferro,
    DomainWall,
    Efp,
    Walker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Determinant,
    Spectral,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CountKind {
    Macmahon,
    Zq,
    ACspp,
    ZqCspp,
    Qbd,
    Prop3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum AsymKind {
    Ferro,
    DomainWall,
}

/// Parameter grid shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct Grid {
    pub m: Vec<usize>,
    pub particles: Vec<usize>,
    pub n: Vec<usize>,
    pub beta: Vec<Complex64>,
}

impl Grid {
    fn points(&self) -> Vec<(usize, usize, usize, Complex64)> {
        let mut out = Vec::new();
        for &m in &self.m {
            for &big_n in &self.particles {
                for &n in &self.n {
                    for &b in &self.beta {
                        out.push((m, big_n, n, b));
                    }
                }
            }
        }
        out
    }

    fn check(&self, need: &[(&str, bool)]) -> Result<()> {
        for (name, empty) in need {
            ensure!(!empty, "grid --{name} is empty");
        }
        Ok(())
    }
}

enum Row {
    Value(Complex64, bool),
    Marked(String),
}

fn mark_chain(e: ChainError) -> Row {
    match e {
        ChainError::BudgetExceeded { .. } => Row::Marked("budget_exceeded".into()),
        other => Row::Marked(format!("out_of_domain: {other}")),
    }
}

fn mark_oracle(e: OracleError) -> Row {
    match e {
        OracleError::BudgetExceeded { .. } => Row::Marked("budget_exceeded".into()),
        other => Row::Marked(format!("out_of_domain: {other}")),
    }
}

fn from_result(r: Result<CorrelatorResult, ChainError>) -> Row {
    r.map_or_else(mark_chain, |c| Row::Value(c.value, c.ill_conditioned))
}

fn sector_size(m: usize, big_n: usize) -> Option<u128> {
    ChainParams::new(m, big_n).ok().map(|p| p.sector_size())
}

fn evaluate(
    kind: CorrelatorKind,
    method: MethodArg,
    budget: Option<u128>,
    (m, big_n, n, beta): (usize, usize, usize, Complex64),
) -> Row {
    let limit = match method {
        MethodArg::Determinant => None,
        MethodArg::Spectral => Some(budget.unwrap_or(SPECTRAL_BUDGET)),
        MethodArg::Oracle => Some(budget.unwrap_or(SECTOR_BUDGET as u128)),
    };
    if let (Some(limit), Some(size)) = (limit, sector_size(m, big_n)) {
        if size > limit {
            return Row::Marked("budget_exceeded".into());
        }
    }
    match (kind, method) {
        (CorrelatorKind::Ferro, MethodArg::Determinant) => from_result(persistence_ferro(m, big_n, n, beta)),
        (CorrelatorKind::Ferro, MethodArg::Spectral) => from_result(persistence_ferro_spectral(m, big_n, n, beta)),
        (CorrelatorKind::Ferro, MethodArg::Oracle) => {
            oracle_ferro(m, big_n, n, beta).map_or_else(mark_oracle, |v| Row::Value(v, false))
        }
        (CorrelatorKind::DomainWall, MethodArg::Determinant) => from_result(persistence_domain_wall(m, big_n, n, beta)),
        (CorrelatorKind::DomainWall, MethodArg::Spectral) => {
            from_result(persistence_domain_wall_spectral(m, big_n, n, beta))
        }
        (CorrelatorKind::DomainWall, MethodArg::Oracle) => {
            oracle_domain_wall(m, big_n, n, beta).map_or_else(mark_oracle, |v| Row::Value(v, false))
        }
        (CorrelatorKind::Efp, _) => match ground_state(m, big_n) {
            Ok(_) if n > m + 1 => Row::Marked(format!("out_of_domain: string length {n} exceeds the {} sites", m + 1)),
            Ok(g) => Row::Value(Complex64::new(efp_formfactor::<f64>(&g, n), 0.0), false),
            Err(e) => mark_chain(e),
        },
        (CorrelatorKind::Walker, _) => unreachable!("walkers are tabulated separately"),
    }
}

pub const CORRELATOR_COLUMNS: [&str; 11] =
    ["kind", "M", "N", "n", "beta_re", "beta_im", "method", "value_re", "value_im", "ill_conditioned", "status"];

fn kind_name(kind: CorrelatorKind) -> &'static str {
    match kind {
        CorrelatorKind::Ferro => "ferro",
        CorrelatorKind::DomainWall => "domain_wall",
        CorrelatorKind::Efp => "efp",
        CorrelatorKind::Walker => "walker",
    }
}

fn method_name(kind: CorrelatorKind, method: MethodArg) -> &'static str {
    match (kind, method) {
        (CorrelatorKind::Efp, _) => "form_factor",
        (_, MethodArg::Determinant) => "determinant",
        (_, MethodArg::Spectral) => "spectral_sum",
        (_, MethodArg::Oracle) => "oracle",
    }
}

fn value_cells(row: Row) -> [Cell; 4] {
    match row {
        Row::Value(v, ill) => [v.re.into(), v.im.into(), ill.into(), "ok".into()],
        Row::Marked(s) => [Cell::Missing, Cell::Missing, Cell::Missing, s.into()],
    }
}

/// One row per grid point in `M, N, n, beta` order. Rows that exceed the
/// budget or leave the domain are marked rather than fatal.
pub fn cmd_correlator(kind: CorrelatorKind, method: MethodArg, grid: &Grid, budget: Option<u128>) -> Result<Table> {
    ensure!(kind != CorrelatorKind::Walker, "use cmd_walker for walker amplitudes");
    grid.check(&[("M", grid.m.is_empty()), ("N", grid.particles.is_empty()), ("n", grid.n.is_empty())])?;
    grid.check(&[("beta", grid.beta.is_empty())])?;
    let points = grid.points();
    let rows: Vec<Row> = points.par_iter().map(|&pt| evaluate(kind, method, budget, pt)).collect();
    let mut t = Table::new(CORRELATOR_COLUMNS.to_vec());
    for ((m, big_n, n, b), row) in points.into_iter().zip(rows) {
        let mut cells = vec![
            kind_name(kind).into(),
            m.into(),
            big_n.into(),
            n.into(),
            b.re.into(),
            b.im.into(),
            method_name(kind, method).into(),
        ];
        cells.extend(value_cells(row));
        t.push(cells);
    }
    Ok(t)
}

pub const WALKER_COLUMNS: [&str; 9] =
    ["M", "from", "to", "beta_re", "beta_im", "method", "value_re", "value_im", "status"];

/// `<to| e^{-beta H} |from>` for walker configurations, one row per `M, beta`.
pub fn cmd_walker(
    from: &[i64],
    to: &[i64],
    method: MethodArg,
    ms: &[usize],
    betas: &[Complex64],
    budget: Option<u128>,
) -> Result<Table> {
    let sort_desc = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let (from_s, to_s) = (StrictPartition::new(sort_desc(from))?, StrictPartition::new(sort_desc(to))?);
    ensure!(from_s.len() == to_s.len(), "--from and --to must hold the same number of walkers");
    ensure!(!ms.is_empty() && !betas.is_empty(), "grid --M and --beta must be non-empty");
    let method = if method == MethodArg::Spectral { MethodArg::Determinant } else { method };
    let points: Vec<(usize, Complex64)> = ms.iter().flat_map(|&m| betas.iter().map(move |&b| (m, b))).collect();
    let rows: Vec<Row> = points
        .par_iter()
        .map(|&(m, b)| match method {
            MethodArg::Oracle => {
                if sector_size(m, from_s.len()).is_some_and(|s| s > budget.unwrap_or(SECTOR_BUDGET as u128)) {
                    return Row::Marked("budget_exceeded".into());
                }
                oracle_walker(m, &to_s, &from_s, b).map_or_else(mark_oracle, |v| Row::Value(v, false))
            }
            _ => walker_amplitude_multi(&to_s, &from_s, b, m).map_or_else(mark_chain, |v| Row::Value(v, false)),
        })
        .collect();
    let join = |v: &StrictPartition| v.parts().iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut t = Table::new(WALKER_COLUMNS.to_vec());
    for ((m, b), row) in points.into_iter().zip(rows) {
        let mut cells = vec![
            m.into(),
            join(&from_s).into(),
            join(&to_s).into(),
            b.re.into(),
            b.im.into(),
            method_name(CorrelatorKind::Walker, method).into(),
        ];
        let [re, im, _, status] = value_cells(row);
        cells.extend([re, im, status]);
        t.push(cells);
    }
    Ok(t)
}

fn triples(ls: &[i64], ns: &[i64], ps: &[i64]) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for &l in ls {
        for &n in ns {
            for &p in ps {
                out.push((l, n, p));
            }
        }
    }
    out
}

/// Exact box counts as decimal strings and q-polynomials as exponent maps.
pub fn cmd_count(kind: CountKind, ls: &[i64], ns: &[i64], ps: &[i64]) -> Result<Table> {
    ensure!(!ns.is_empty() && !ps.is_empty(), "grid --N and --P must be non-empty");
    let needs_l = !matches!(kind, CountKind::ACspp | CountKind::ZqCspp);
    ensure!(!needs_l || !ls.is_empty(), "grid --L must be non-empty");
    let mut t = match kind {
        CountKind::ACspp | CountKind::ZqCspp => Table::new(vec!["N", "P", "value"]),
        CountKind::Macmahon | CountKind::Zq => Table::new(vec!["L", "N", "P", "value"]),
        CountKind::Qbd => Table::new(vec!["L", "N", "P", "value", "value_at_1"]),
        CountKind::Prop3 => Table::new(vec!["L", "N", "P", "all_equal", "degree", "value_at_1", "in_regime"]),
    };
    if !needs_l {
        for &n in ns {
            for &p in ps {
                let value: Cell = match kind {
                    CountKind::ACspp => a_cspp(n, p)?.into(),
                    _ => zq_cspp(n, p)?.into(),
                };
                t.push(vec![n.into(), p.into(), value]);
            }
        }
        return Ok(t);
    }
    for (l, n, p) in triples(ls, ns, ps) {
        match kind {
            CountKind::Macmahon => {
                ensure!(l >= 0 && n >= 0 && p >= 0, "box sides must be non-negative, got ({l}, {n}, {p})");
                t.push(vec![l.into(), n.into(), p.into(), macmahon(l, n, p).into()]);
            }
            CountKind::Zq => t.push(vec![l.into(), n.into(), p.into(), zq(l, n, p)?.into()]),
            CountKind::Qbd => {
                ensure!(l >= 0 && n >= 0 && p >= 0, "box sides must be non-negative, got ({l}, {n}, {p})");
                let tuples = IndexTuples::consecutive(l + n, l, p as usize)?;
                let poly = q_binomial_determinant(&tuples);
                t.push(vec![l.into(), n.into(), p.into(), poly.into(), binomial_determinant(&tuples).into()]);
            }
            CountKind::Prop3 => {
                let r = proposition3(l, n, p)?;
                t.push(vec![
                    l.into(),
                    n.into(),
                    p.into(),
                    r.all_equal.into(),
                    r.zq_value.degree().into(),
                    r.zq_value.at_one().into(),
                    r.in_regime.into(),
                ]);
            }
            CountKind::ACspp | CountKind::ZqCspp => unreachable!(),
        }
    }
    Ok(t)
}

pub const ASYM_COLUMNS: [&str; 15] = [
    "kind",
    "M",
    "N",
    "n",
    "beta",
    "status",
    "exact_log",
    "asym_log",
    "amplitude",
    "lattice",
    "critical",
    "mehta",
    "phi",
    "leading_law",
    "error",
];

fn exact_log(kind: AsymKind, m: usize, big_n: usize, n: usize, beta: f64, budget: u128) -> Option<f64> {
    if sector_size(m, big_n)? > budget {
        return None;
    }
    let b = Complex64::new(beta, 0.0);
    let v = match kind {
        AsymKind::Ferro => persistence_ferro_spectral(m, big_n, n, b),
        AsymKind::DomainWall => persistence_domain_wall_spectral(m, big_n, n, b),
    }
    .ok()?
    .value
    .re;
    (v > 0.0).then(|| v.ln())
}

/// Exact log correlator from the spectral sum, when the sector fits the
/// budget, next to the asymptotic estimate and its pieces.
pub fn cmd_asym(kind: AsymKind, grid: &Grid, budget: Option<u128>) -> Result<Table> {
    grid.check(&[("M", grid.m.is_empty()), ("N", grid.particles.is_empty()), ("n", grid.n.is_empty())])?;
    grid.check(&[("beta", grid.beta.is_empty())])?;
    for b in &grid.beta {
        ensure!(b.im == 0.0 && b.re > 0.0, "asymptotic tables need real beta > 0, got {b}");
    }
    let budget = budget.unwrap_or(SPECTRAL_BUDGET);
    let points = grid.points();
    let rows: Vec<(Result<AsymptoticEstimate, String>, Option<f64>)> = points
        .par_iter()
        .map(|&(m, big_n, n, b)| {
            let est = match kind {
                AsymKind::Ferro => ferro_asymptotic(m, big_n, n, b.re),
                AsymKind::DomainWall => domain_wall_asymptotic(m, big_n, n, b.re),
            }
            .map_err(|e| e.to_string());
            let exact = est.as_ref().ok().and_then(|_| exact_log(kind, m, big_n, n, b.re, budget));
            (est, exact)
        })
        .collect();
    let mut t = Table::new(ASYM_COLUMNS.to_vec());
    let name = match kind {
        AsymKind::Ferro => "ferro",
        AsymKind::DomainWall => "domain_wall",
    };
    for ((m, big_n, n, b), (est, exact)) in points.into_iter().zip(rows) {
        let mut cells: Vec<Cell> = vec![name.into(), m.into(), big_n.into(), n.into(), b.re.into()];
        match est {
            Ok(e) => {
                let status = if exact.is_some() { "exact" } else { "asym-only" };
                let phi = big_phi(big_n as u32, m, b.re);
                cells.extend([
                    status.into(),
                    exact.into(),
                    e.log_value.into(),
                    e.pieces.amplitude.into(),
                    e.pieces.lattice.into(),
                    e.pieces.critical.into(),
                    e.pieces.mehta.into(),
                    phi.into(),
                    e.leading_law.into(),
                    exact.map(|x| x - e.log_value).into(),
                ]);
            }
            Err(msg) => {
                cells.push(format!("out_of_domain: {msg}").into());
                cells.extend(std::iter::repeat_n(Cell::Missing, 9));
            }
        }
        t.push(cells);
    }
    Ok(t)
}

/// Parses `"0.5"`, `"1+2i"` or `"-0.3i"`.
pub fn parse_beta(s: &str) -> Result<Complex64> {
    match s.trim().parse::<Complex64>() {
        Ok(v) if v.re.is_finite() && v.im.is_finite() => Ok(v),
        _ => bail!("cannot parse beta {s:?}"),
    }
}

/// Numeric value of a cell, if it has one.
pub fn cell_f64(c: &Cell) -> Option<f64> {
    match c {
        Cell::Float(x) => Some(*x),
        Cell::Int(v) => Some(*v as f64),
        Cell::Big(v) => v.to_f64(),
        _ => None,
    }
}
