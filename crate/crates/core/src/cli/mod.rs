//! The `circuit-dicke` command-line front end.
//!
//! Each subcommand reads an optional TOML config (`--config`), applies inline
//! flag overrides, validates, computes a table and writes it as CSV or JSON to
//! `--out` (atomically) or to stdout. Failures map onto fixed exit codes, see
//! [`exit`].

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bcs::verify_suite;
use crate::dicke_ed::{scaling_scan, ScanOptions};
use crate::error::{Error, Result};
use crate::phase::{sweep, OmegaAxis, Range, SweepMode, SweepSpec};
use crate::quadratic::{closed_form_spectrum, TwoModeQuadratic};
use config::{EdScanConfig, FaultName, SpectrumConfig, VerifyBcsConfig};
use output::{write_atomic, Cell, Table};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const INVARIANT: i32 = 4;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => exit::IO,
        Error::Validation { .. } | Error::DimensionCap { .. } => exit::VALIDATION,
        Error::SingularForm { .. } | Error::NoConvergence { .. } | Error::BracketFailure { .. } => exit::NUMERIC,
        Error::NonHermitian { .. } | Error::Unnormalized { .. } | Error::InvariantViolation { .. } => exit::INVARIANT,
    }
}

#[derive(Debug, Parser)]
#[command(name = "circuit-dicke", version, about = "Normal modes, phase diagrams and exact diagonalization of the circuit-QED Dicke model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate ω_+² and ω_−² over a grid of couplings Ω.
    Spectrum(SpectrumArgs),
    /// Classify a (κ, γ, Ω) grid.
    PhaseDiagram(PhaseDiagramArgs),
    /// Exact diagonalization over (N, Ω) with pseudo-critical couplings.
    EdScan(EdScanArgs),
    /// Check the pair pseudo-spin algebra and the Josephson current law.
    VerifyBcs(VerifyBcsArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub omega_min: Option<f64>,
    #[arg(long)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

impl GridArgs {
    fn apply(&self, r: &mut Range) {
        set(&mut r.min, self.omega_min);
        set(&mut r.max, self.omega_max);
        set(&mut r.steps, self.steps);
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub omega_r: Option<f64>,
    #[arg(long)]
    pub omega_j: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Fixed D instead of κγΩ²/ω_J.
    #[arg(long)]
    pub untied_d: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    FixedOmega,
    InfiniteN,
}

#[derive(Debug, Args)]
pub struct PhaseDiagramArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub kappa_min: Option<f64>,
    #[arg(long)]
    pub kappa_max: Option<f64>,
    #[arg(long)]
    pub kappa_steps: Option<usize>,
    #[arg(long)]
    pub gamma_min: Option<f64>,
    #[arg(long)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub gamma_steps: Option<usize>,
    /// Single coupling Ω (replaces any Ω range).
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega_r: Option<f64>,
    #[arg(long)]
    pub omega_j: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub untied_d: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EdScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated atom numbers.
    #[arg(long, value_delimiter = ',')]
    pub n_atoms: Option<Vec<usize>>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub omega_r: Option<f64>,
    #[arg(long)]
    pub omega_j: Option<f64>,
    /// Fixed photon cutoff for every run.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Seed for the Lanczos start vectors.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyBcsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated pair counts per side.
    #[arg(long, value_delimiter = ',')]
    pub n_pairs: Option<Vec<usize>>,
    /// Deliberately corrupt one check (for testing the report).
    #[arg(long, value_enum)]
    pub inject_fault: Option<FaultName>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::VALIDATION } else { exit::OK };
        }
    };
    match execute(&cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::PhaseDiagram(a) => cmd_phase_diagram(a),
        Command::EdScan(a) => cmd_ed_scan(a),
        Command::VerifyBcs(a) => cmd_verify_bcs(a),
    }
}

fn emit<C: Serialize>(common: &Common, config: &C, table: &Table) -> Result<()> {
    let text = match common.format {
        Format::Csv => table.to_csv(&config::to_toml(config)),
        Format::Json => table.to_json(config)?,
    };
    match &common.out {
        Some(path) => write_atomic(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn check_jobs(jobs: Option<usize>) -> Result<()> {
    if jobs == Some(0) {
        return Err(Error::validation("jobs", "must be at least 1"));
    }
    Ok(())
}

pub fn spectrum_table(cfg: &SpectrumConfig) -> Result<Table> {
    cfg.validate()?;
    let mut table = Table::new(vec!["omega_big", "omega_plus_sq", "omega_minus_sq", "phase"]);
    for om in cfg.omega_big.values() {
        let h = TwoModeQuadratic::new(cfg.omega_r, cfg.omega_j, om, cfg.d_coef(om), 0.0);
        let s = closed_form_spectrum(&h);
        table.push(vec![om.into(), s.omega_plus_sq.into(), s.omega_minus_sq.into(), s.phase.as_str().into()]);
    }
    Ok(table)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<()> {
    check_jobs(a.common.jobs)?;
    let mut cfg: SpectrumConfig = config::load(a.common.config.as_deref())?;
    a.grid.apply(&mut cfg.omega_big);
    set(&mut cfg.omega_r, a.omega_r);
    set(&mut cfg.omega_j, a.omega_j);
    set(&mut cfg.kappa, a.kappa);
    set(&mut cfg.gamma, a.gamma);
    if a.untied_d.is_some() {
        cfg.untied_d = a.untied_d;
    }
    let table = spectrum_table(&cfg)?;
    emit(&a.common, &cfg, &table)
}

pub fn phase_table(spec: &SweepSpec, jobs: Option<usize>) -> Result<Table> {
    let points = sweep(spec, jobs)?;
    let mut table = Table::new(vec!["kappa", "gamma", "omega_big", "omega_minus_sq", "phase", "omega_critical"]);
    for p in points {
        table.push(vec![
            p.kappa.into(),
            p.gamma.into(),
            p.omega_big.into(),
            p.omega_minus_sq.into(),
            p.phase.as_str().into(),
            p.omega_critical.into(),
        ]);
    }
    Ok(table)
}

fn cmd_phase_diagram(a: &PhaseDiagramArgs) -> Result<()> {
    check_jobs(a.common.jobs)?;
    let mut spec: SweepSpec = config::load(a.common.config.as_deref())?;
    set(&mut spec.kappa.min, a.kappa_min);
    set(&mut spec.kappa.max, a.kappa_max);
    set(&mut spec.kappa.steps, a.kappa_steps);
    set(&mut spec.gamma.min, a.gamma_min);
    set(&mut spec.gamma.max, a.gamma_max);
    set(&mut spec.gamma.steps, a.gamma_steps);
    if let Some(om) = a.omega {
        spec.omega_big = OmegaAxis::Fixed(om);
    }
    set(&mut spec.omega_r, a.omega_r);
    set(&mut spec.omega_j, a.omega_j);
    if let Some(m) = a.mode {
        spec.mode = match m {
            ModeArg::FixedOmega => SweepMode::FixedOmega,
            ModeArg::InfiniteN => SweepMode::InfiniteN,
        };
    }
    if a.untied_d.is_some() {
        spec.untied_d = a.untied_d;
    }
    let table = phase_table(&spec, a.common.jobs)?;
    emit(&a.common, &spec, &table)
}

pub fn ed_scan_table(cfg: &EdScanConfig, jobs: Option<usize>) -> Result<Table> {
    cfg.validate()?;
    let opts = ScanOptions { photon_cutoff: cfg.photon_cutoff, seed: Some(cfg.seed), jobs };
    let scan = scaling_scan(&cfg.n_atoms, &cfg.omega_big.values(), &cfg.model(), &opts)?;
    let mut table = Table::new(vec![
        "n_atoms",
        "omega_big",
        "photon_cutoff",
        "ground_energy",
        "gap",
        "photon_density",
        "inversion",
        "cutoff_converged",
        "omega_c",
        "omega_c_at_edge",
    ]);
    for p in &scan.points {
        let est = scan.estimates.iter().find(|e| e.n_atoms == p.n_atoms).expect("one estimate per size");
        let r = &p.result;
        table.push(vec![
            p.n_atoms.into(),
            p.omega_big.into(),
            p.photon_cutoff.into(),
            r.ground_energy.into(),
            r.gap.into(),
            r.photon_density.into(),
            r.inversion.into(),
            r.cutoff_converged.into(),
            est.omega_c.into(),
            est.at_grid_edge.into(),
        ]);
    }
    Ok(table)
}

fn cmd_ed_scan(a: &EdScanArgs) -> Result<()> {
    check_jobs(a.common.jobs)?;
    let mut cfg: EdScanConfig = config::load(a.common.config.as_deref())?;
    a.grid.apply(&mut cfg.omega_big);
    if let Some(n) = &a.n_atoms {
        cfg.n_atoms = n.clone();
    }
    set(&mut cfg.kappa, a.kappa);
    set(&mut cfg.gamma, a.gamma);
    set(&mut cfg.omega_r, a.omega_r);
    set(&mut cfg.omega_j, a.omega_j);
    if a.cutoff.is_some() {
        cfg.photon_cutoff = a.cutoff;
    }
    set(&mut cfg.seed, a.seed);
    let table = ed_scan_table(&cfg, a.common.jobs)?;
    emit(&a.common, &cfg, &table)
}

fn cmd_verify_bcs(a: &VerifyBcsArgs) -> Result<()> {
    check_jobs(a.common.jobs)?;
    let mut cfg: VerifyBcsConfig = config::load(a.common.config.as_deref())?;
    if let Some(n) = &a.n_pairs {
        cfg.n_pairs = n.clone();
    }
    if a.inject_fault.is_some() {
        cfg.fault = a.inject_fault;
    }
    cfg.validate()?;
    let checks = verify_suite(&cfg.n_pairs, cfg.fault.map(Into::into))?;

    let mut table = Table::new(vec!["identity", "n_pairs", "value", "limit", "passed"]);
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status} {} n_pairs={} value={:e} limit={:e}", c.identity, c.n_pairs, c.value, c.limit);
        table.push(vec![Cell::Text(c.identity), c.n_pairs.into(), c.value.into(), c.limit.into(), c.passed.into()]);
    }
    if a.common.out.is_some() {
        emit(&a.common, &cfg, &table)?;
    }

    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.identity).collect();
    if let Some(worst) = checks.iter().find(|c| !c.passed) {
        return Err(Error::InvariantViolation { identity: failed.join(", "), defect: worst.value });
    }
    Ok(())
}
