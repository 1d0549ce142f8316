//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use calogero::quantum::Coupling;
use calogero::roots::RootType;
use calogero::sim::{Integrator, SimConfig, SimState, DEFAULT_COLLISION_THRESHOLD, DRIFT_TOLERANCE};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{report_merge, CheckResult, Status};
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "calogero", version, about = "Exact verification suites for the rational Calogero-Moser system")]
pub struct Cli {
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Suppress the per-check lines.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lax identities and integrals of motion.
    #[command(subcommand)]
    Verify(Verify),
    /// Root-system construction.
    #[command(subcommand)]
    Roots(Roots),
    /// Dunkl operator identities.
    #[command(subcommand)]
    Dunkl(DunklCmd),
    /// Integrate the classical flow and check conservation.
    Simulate(Simulate),
    /// Run the default matrix of every suite.
    All,
}

fn particles(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("expected an integer ≥ 2, got {s}")),
    }
}

fn root_type(s: &str) -> Result<RootType, String> {
    s.parse().map_err(|e: calogero::roots::RootsError| e.to_string())
}

#[derive(Args, Debug)]
pub struct Particles {
    #[arg(long, default_value = "3", value_parser = particles)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    ClassicalLax {
        #[command(flatten)]
        n: Particles,
        /// Flip the sign of one entry of M (negative control).
        #[arg(long)]
        perturb_m: bool,
    },
    QuantumLax {
        #[command(flatten)]
        n: Particles,
        #[arg(long, value_enum, default_value_t = CouplingArg::KMinus1)]
        coupling: CouplingArg,
        #[arg(long)]
        perturb_m: bool,
    },
    Involution {
        #[command(flatten)]
        n: Particles,
    },
    QuantumCommute {
        #[command(flatten)]
        n: Particles,
        #[arg(long)]
        perturb_m: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    #[value(name = "k-minus-1")]
    KMinus1,
    #[value(name = "k-plus-1")]
    KPlus1,
}

impl From<CouplingArg> for Coupling {
    fn from(c: CouplingArg) -> Self {
        match c {
            CouplingArg::KMinus1 => Coupling::KMinusOne,
            CouplingArg::KPlus1 => Coupling::KPlusOne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Roots {
    Build {
        #[arg(long = "type", value_parser = root_type)]
        root_type: RootType,
        /// Run the axiom, crystallographic and Coxeter-order checks.
        #[arg(long)]
        check: bool,
        /// Dump roots, simple system and Coxeter matrix to stdout.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
}

#[derive(Args, Debug)]
pub struct TypeArg {
    #[arg(long = "type", value_parser = root_type)]
    pub root_type: RootType,
}

#[derive(Subcommand, Debug)]
pub enum DunklCmd {
    Commute {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
    },
    Restrict {
        #[command(flatten)]
        t: TypeArg,
    },
    Gauge {
        #[command(flatten)]
        t: TypeArg,
    },
    Classical {
        #[command(flatten)]
        t: TypeArg,
    },
}

#[derive(Args, Debug)]
pub struct Simulate {
    #[arg(long, default_value = "3", value_parser = particles)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, default_value = "rk4")]
    pub integrator: Integrator,
    /// Initial positions, comma separated (defaults depend on n).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Option<Vec<f64>>,
    /// Initial momenta, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10)]
    pub cadence: usize,
    #[arg(long, default_value_t = DRIFT_TOLERANCE)]
    pub tolerance: f64,
    /// Write the trajectory here as CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

impl Simulate {
    pub fn config(&self) -> Result<SimConfig, String> {
        let base = if self.n == 3 {
            SimConfig::reference()
        } else {
            SimConfig::spread(self.n, self.k)
        };
        let q = self.q.clone().unwrap_or(base.initial.q);
        let p = self.p.clone().unwrap_or(base.initial.p);
        let config = SimConfig {
            n: self.n,
            k: self.k,
            dt: self.dt,
            t_end: self.t_end,
            initial: SimState::new(q, p),
            integrator: self.integrator,
            cadence: self.cadence,
            collision_threshold: DEFAULT_COLLISION_THRESHOLD,
        };
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

/// Parse, run, report; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    let mut dump = None;
    let results: Vec<CheckResult> = match &cli.command {
        Command::Verify(v) => match v {
            Verify::ClassicalLax { n, perturb_m } => suites::classical_lax(n.n, *perturb_m),
            Verify::QuantumLax { n, coupling, perturb_m } => suites::quantum_lax(n.n, (*coupling).into(), *perturb_m),
            Verify::Involution { n } => suites::involution(n.n),
            Verify::QuantumCommute { n, perturb_m } => suites::quantum_commute(n.n, *perturb_m),
        },
        Command::Roots(Roots::Build { root_type, check, emit }) => {
            let (checks, system) = suites::roots(*root_type, *check);
            if let (Some(Emit::Json), Some(system)) = (emit, &system) {
                dump = Some(suites::roots_json(system));
            }
            checks
        }
        Command::Dunkl(d) => match d {
            DunklCmd::Commute { t, max_degree } => suites::dunkl_commute(t.root_type, *max_degree),
            DunklCmd::Restrict { t } => suites::dunkl_restrict(t.root_type),
            DunklCmd::Gauge { t } => suites::dunkl_gauge(t.root_type),
            DunklCmd::Classical { t } => suites::dunkl_classical(t.root_type),
        },
        Command::Simulate(s) => {
            let config = s.config()?;
            suites::simulate(&config, s.tolerance, s.csv.as_deref()).map_err(|e| format!("csv output: {e}"))?
        }
        Command::All => suites::all(),
    };
    let report = report_merge(results).map_err(|e| e.to_string())?;

    // check lines move to stderr when stdout carries a JSON dump
    let mut lines: Box<dyn Write> = if dump.is_some() {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    if !cli.quiet {
        for c in &report.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(lines, "{status} {} ({} ms)", c.check_id, c.elapsed_ms);
            if let Some(w) = &c.residual_witness {
                let _ = writeln!(lines, "     witness: {w}");
            }
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        lines,
        "{}: {} checks, {} passed, {} failed, {} skipped",
        if report.passed() { "PASS" } else { "FAIL" },
        s.total,
        s.passed,
        s.failed,
        s.skipped
    );
    if let Some(value) = dump {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    }
    if let Some(path) = &cli.report {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}
