//! Batch front end for the Wiener-Hopf spectral solver.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 invalid configuration,
//! 3 solver failure.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{
    build_run_config, merge_angle, parse_n_list, parse_reference, ConfigError, FileConfig,
    Problem, Resolved, RunConfig,
};
use std::path::PathBuf;
use std::process::ExitCode;
use wienerhopf::diffraction::{
    hurd_problem, senior_matrix_problem, senior_scalar_problems, sommerfeld_problem,
    DiffractionProblem,
};
use wienerhopf::farfield::{
    directivity, directivity_senior_scalar, sommerfeld_directivity_exact, theta_grid,
};
use wienerhopf::mapping::RationalMap;
use wienerhopf::metrics::{convergence_sweep, ConvergenceRecord, MetricsError};
use wienerhopf::rh::solve;
use wienerhopf::MapKind;

#[derive(Parser)]
#[command(
    name = "whsolve",
    about = "Spectral Wiener-Hopf / Riemann-Hilbert solver for half-plane diffraction",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem: sommerfeld | senior-scalar | senior-matrix | hurd
    #[arg(long)]
    problem: Option<String>,
    /// Rational mapping: 2to1 | 4to1 (default 4to1)
    #[arg(long)]
    mapping: Option<String>,
    /// Collocation points (default 129)
    #[arg(long)]
    n: Option<usize>,
    /// Contour rotation angle in radians; accepts pi expressions like pi/4
    #[arg(long)]
    chi: Option<String>,
    /// Wavenumber (default 1)
    #[arg(long)]
    k: Option<f64>,
    /// Incidence angle in radians; accepts pi expressions
    #[arg(long)]
    theta0: Option<String>,
    /// Senior impedance parameter
    #[arg(long = "S")]
    s: Option<f64>,
    /// Hurd impedance angle 1; accepts pi expressions
    #[arg(long)]
    theta1: Option<String>,
    /// Hurd impedance angle 2; accepts pi expressions
    #[arg(long)]
    theta2: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a catalogue problem and write the solution as JSON
    Solve(CommonArgs),
    /// Run a convergence sweep and write a CSV table
    Converge {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated resolutions, e.g. 17,33,65,129
        #[arg(long = "n-list")]
        n_list: Option<String>,
        /// Error reference: exact | self:<n>
        #[arg(long)]
        reference: Option<String>,
    },
    /// Emit a far-field directivity curve as CSV
    Directivity {
        #[command(flatten)]
        common: CommonArgs,
        /// Lower end of the theta grid (default 0)
        #[arg(long = "theta-min")]
        theta_min: Option<String>,
        /// Upper end of the theta grid (default 2*pi)
        #[arg(long = "theta-max")]
        theta_max: Option<String>,
        /// Number of theta samples (default 361)
        #[arg(long)]
        samples: Option<usize>,
        /// compare=exact adds exact-directivity columns (Sommerfeld only)
        #[arg(long)]
        compare: Option<String>,
    },
    /// Run the built-in verification suites
    Selftest,
}

fn resolve(common: &CommonArgs) -> Result<(RunConfig, FileConfig), ConfigError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let resolved = Resolved {
        problem: common.problem.clone().or_else(|| file.problem.clone()),
        mapping: common.mapping.clone().or_else(|| file.mapping.clone()),
        n: common.n.or(file.n),
        chi: merge_angle(&common.chi, &file.chi)?,
        k: common.k.or(file.k),
        theta0: merge_angle(&common.theta0, &file.theta0)?,
        s: common.s.or(file.s),
        theta1: merge_angle(&common.theta1, &file.theta1)?,
        theta2: merge_angle(&common.theta2, &file.theta2)?,
        out: common
            .out
            .clone()
            .or_else(|| file.out.clone().map(PathBuf::from)),
        epsilon: file.epsilon,
    };
    Ok((build_run_config(resolved)?, file))
}

fn map_of(cfg: &RunConfig) -> RationalMap {
    match cfg.mapping {
        MapKind::TwoToOne => RationalMap::two_to_one(),
        MapKind::FourToOne => RationalMap::four_to_one(),
    }
}

enum Built {
    Single(DiffractionProblem),
    Pair(DiffractionProblem, DiffractionProblem),
}

fn build_problem(cfg: &RunConfig) -> Result<Built, wienerhopf::diffraction::ParamError> {
    let map = map_of(cfg);
    Ok(match cfg.problem {
        Problem::Sommerfeld => Built::Single(sommerfeld_problem(&cfg.params, map, cfg.chi)?),
        Problem::SeniorMatrix => Built::Single(senior_matrix_problem(&cfg.params, map, cfg.chi)?),
        Problem::Hurd => Built::Single(hurd_problem(&cfg.params, map, cfg.chi)?),
        Problem::SeniorScalar => {
            let (sum, diff) = senior_scalar_problems(&cfg.params, map, cfg.chi)?;
            Built::Pair(sum, diff)
        }
    })
}

fn print_warnings(dp: &DiffractionProblem) {
    for w in &dp.rh.warnings {
        eprintln!("warning: {w}");
    }
}

const EXIT_SELFTEST: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn cmd_solve(common: &CommonArgs) -> ExitCode {
    let (cfg, _) = match resolve(common) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let built = match build_problem(&cfg) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let doc = match &built {
        Built::Single(dp) => {
            print_warnings(dp);
            match solve(&dp.rh, cfg.n) {
                Ok(sol) => output::solution_document(&cfg, &[(&sol, output::component_names(cfg.problem, 0))]),
                Err(e) => return fail(EXIT_SOLVER, e),
            }
        }
        Built::Pair(sum, diff) => {
            print_warnings(sum);
            let s1 = match solve(&sum.rh, cfg.n) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_SOLVER, e),
            };
            let s2 = match solve(&diff.rh, cfg.n) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_SOLVER, e),
            };
            output::solution_document(
                &cfg,
                &[(&s1, vec!["sum".into()]), (&s2, vec!["difference".into()])],
            )
        }
    };
    match output::emit(&cfg.out, &doc) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_CONFIG, e),
    }
}

fn cmd_converge(common: &CommonArgs, n_list: &Option<String>, reference: &Option<String>) -> ExitCode {
    let (cfg, file) = match resolve(common) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let n_list = match parse_n_list(n_list, &file.n_list) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let reference = match reference
        .clone()
        .or(file.reference.clone())
        .as_deref()
        .map(parse_reference)
        .unwrap_or(Ok(wienerhopf::Reference::SelfHighRes(257)))
    {
        Ok(r) => r,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let built = match build_problem(&cfg) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let records: Result<Vec<ConvergenceRecord>, MetricsError> = match &built {
        Built::Single(dp) => {
            print_warnings(dp);
            convergence_sweep(dp, &n_list, reference)
        }
        Built::Pair(sum, diff) => {
            print_warnings(sum);
            convergence_sweep(sum, &n_list, reference).and_then(|a| {
                let b = convergence_sweep(diff, &n_list, reference)?;
                Ok(a.into_iter()
                    .zip(b)
                    .map(|(x, y)| ConvergenceRecord {
                        n: x.n,
                        e2: x.e2.max(y.e2),
                        einf: x.einf.max(y.einf),
                        ealpha2: x.ealpha2.max(y.ealpha2),
                        reference: x.reference,
                    })
                    .collect())
            })
        }
    };
    let records = match records {
        Ok(r) => r,
        Err(MetricsError::Solve(e)) => return fail(EXIT_SOLVER, e),
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    match output::emit(&cfg.out, &output::converge_csv(&records)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_CONFIG, e),
    }
}

fn cmd_directivity(
    common: &CommonArgs,
    theta_min: &Option<String>,
    theta_max: &Option<String>,
    samples: &Option<usize>,
    compare: &Option<String>,
) -> ExitCode {
    let (cfg, file) = match resolve(common) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let lo = match merge_angle(theta_min, &file.theta_min) {
        Ok(v) => v.unwrap_or(0.0),
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let hi = match merge_angle(theta_max, &file.theta_max) {
        Ok(v) => v.unwrap_or(2.0 * std::f64::consts::PI),
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let samples = samples.or(file.samples).unwrap_or(361);
    if samples < 2 {
        return fail(EXIT_CONFIG, format!("samples = {samples} too few (need >= 2)"));
    }
    let compare = compare.clone().or(file.compare.clone());
    let compare_exact = match compare.as_deref() {
        None => false,
        Some("exact") => {
            if cfg.problem != Problem::Sommerfeld {
                return fail(
                    EXIT_CONFIG,
                    "compare=exact is only available for the Sommerfeld problem",
                );
            }
            true
        }
        Some(other) => return fail(EXIT_CONFIG, format!("unknown compare mode '{other}'")),
    };

    let thetas = theta_grid(lo, hi, samples);
    let built = match build_problem(&cfg) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let curve = match &built {
        Built::Single(dp) => {
            print_warnings(dp);
            match solve(&dp.rh, cfg.n) {
                Ok(sol) => match directivity(&sol, dp, &thetas) {
                    Ok(c) => c,
                    Err(e) => return fail(EXIT_SOLVER, e),
                },
                Err(e) => return fail(EXIT_SOLVER, e),
            }
        }
        Built::Pair(sum, diff) => {
            print_warnings(sum);
            let s1 = match solve(&sum.rh, cfg.n) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_SOLVER, e),
            };
            let s2 = match solve(&diff.rh, cfg.n) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_SOLVER, e),
            };
            match directivity_senior_scalar(&s1, &s2, &cfg.params, &thetas) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_SOLVER, e),
            }
        }
    };
    let exact = if compare_exact {
        Some(
            thetas
                .iter()
                .map(|&t| {
                    sommerfeld_directivity_exact(&cfg.params, t)
                        .map(|d| d.norm())
                        .unwrap_or(f64::NAN)
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    match output::emit(&cfg.out, &output::directivity_csv(&curve, exact.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_CONFIG, e),
    }
}

fn cmd_selftest() -> ExitCode {
    let report = wienerhopf::selftest::run_all();
    for s in &report.suites {
        println!(
            "{}: {} (max deviation {:.3e}, tolerance {:.1e})",
            s.name,
            if s.passed { "PASS" } else { "FAIL" },
            s.max_deviation,
            s.tolerance
        );
    }
    if report.all_passed() {
        println!("selftest: all suites passed");
        ExitCode::SUCCESS
    } else {
        println!("selftest: FAILURES present");
        ExitCode::from(EXIT_SELFTEST)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Command::Solve(common) => cmd_solve(common),
        Command::Converge {
            common,
            n_list,
            reference,
        } => cmd_converge(common, n_list, reference),
        Command::Directivity {
            common,
            theta_min,
            theta_max,
            samples,
            compare,
        } => cmd_directivity(common, theta_min, theta_max, samples, compare),
        Command::Selftest => cmd_selftest(),
    }
}
