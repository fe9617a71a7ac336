//! Front end for the `xx0` binary: argument types, table output and the
//! verification suites.

pub mod commands;
pub mod table;
pub mod verify;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use commands::{cmd_asym, cmd_correlator, cmd_count, cmd_walker, AsymKind, CorrelatorKind, CountKind, Grid, MethodArg};
use table::Format;
use verify::{cmd_verify, Fault, Suite, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "xx0", version, about = "Thermal correlators, box counts and identity checks for the XX0 chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sector-size budget for spectral sums and exact diagonalization.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
}

#[derive(Debug, Args)]
pub struct ChainGrid {
    #[arg(long = "M", value_delimiter = ',', required = true)]
    pub m: Vec<usize>,
    #[arg(long = "N", value_delimiter = ',')]
    pub particles: Vec<usize>,
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Inverse temperatures; complex values are written `a+bi`.
    #[arg(long, value_delimiter = ',', value_parser = commands::parse_beta, required = true, allow_hyphen_values = true)]
    pub beta: Vec<Complex64>,
}

impl ChainGrid {
    fn grid(&self) -> Grid {
        Grid { m: self.m.clone(), particles: self.particles.clone(), n: self.n.clone(), beta: self.beta.clone() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermal correlators and walker amplitudes on a parameter grid.
    Correlator {
        #[arg(value_enum)]
        kind: CorrelatorKind,
        #[arg(long, value_enum, default_value = "determinant")]
        method: MethodArg,
        #[command(flatten)]
        grid: ChainGrid,
        /// Walker start positions (walker kind only).
        #[arg(long, value_delimiter = ',')]
        from: Vec<i64>,
        /// Walker end positions (walker kind only).
        #[arg(long, value_delimiter = ',')]
        to: Vec<i64>,
    },
    /// Exact plane-partition counts and generating functions.
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        #[arg(long = "L", value_delimiter = ',', allow_hyphen_values = true)]
        l: Vec<i64>,
        #[arg(long = "N", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        n: Vec<i64>,
        #[arg(long = "P", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        p: Vec<i64>,
    },
    /// Run the identity and oracle suites; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Largest N in the two-block determinant grid.
        #[arg(long = "Lmax", default_value_t = 4)]
        l_max: i64,
        #[arg(long = "Mmax", default_value_t = 8)]
        m_max: usize,
        #[arg(long = "Nmax", default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance of the floating-point identity checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// Exact log correlators next to their low-temperature estimates.
    Asym {
        #[arg(value_enum)]
        kind: AsymKind,
        #[command(flatten)]
        grid: ChainGrid,
    },
}

/// Rendered output and the process exit status.
pub struct Outcome {
    pub output: String,
    pub status: i32,
    pub failures: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let budget = cli.output.budget;
    let ok = |t: table::Table| -> Result<Outcome> {
        Ok(Outcome { output: t.render(cli.output.format)?, status: 0, failures: Vec::new() })
    };
    match &cli.command {
        Command::Correlator { kind: CorrelatorKind::Walker, method, grid, from, to } => {
            anyhow::ensure!(!from.is_empty() && !to.is_empty(), "walker amplitudes need --from and --to");
            ok(cmd_walker(from, to, *method, &grid.m, &grid.beta, budget)?)
        }
        Command::Correlator { kind, method, grid, .. } => ok(cmd_correlator(*kind, *method, &grid.grid(), budget)?),
        Command::Count { kind, l, n, p } => ok(cmd_count(*kind, l, n, p)?),
        Command::Asym { kind, grid } => ok(cmd_asym(*kind, &grid.grid(), budget)?),
        Command::Verify { suite, l_max, m_max, n_max, seed, tol, inject_fault } => {
            anyhow::ensure!(*tol > 0.0, "--tol must be positive");
            let cfg = VerifyConfig {
                suites: if suite.is_empty() { Suite::ALL.to_vec() } else { suite.clone() },
                l_max: *l_max,
                m_max: *m_max,
                n_max: *n_max,
                seed: *seed,
                tol: *tol,
                fault: *inject_fault,
            };
            let (t, checks) = cmd_verify(&cfg);
            let failures: Vec<String> =
                checks.iter().filter(|c| !c.pass).map(|c| format!("{}/{}", c.suite, c.name)).collect();
            let status = if failures.is_empty() { 0 } else { 1 };
            Ok(Outcome { output: t.render(cli.output.format)?, status, failures })
        }
    }
}
