//! Command-line interface: single solves, refinement studies, the
//! manufactured-solution listing, and the identity suite.
//!
//! Exit codes: 0 success, 2 configuration error, 3 CFL violation,
//! 4 solver/measurement failure.

use crate::catalog::render_catalog;
use crate::harness::{
    emit_report, list_solutions, parse_config_file, run_study, HarnessError, PartialConfig,
    RefineAxis, ReportFormat, StudyConfig,
};
use crate::methods::{MethodError, Scheme};
use crate::verify::{all_passed, format_check, run_identity_suite};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "stfem",
    version,
    about = "Space-time finite element solvers and convergence studies for the heat and wave equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single configuration and report errors against the
    /// manufactured solution.
    Solve(RunArgs),
    /// Run a refinement study (halving tau or h per level) and fit EOCs.
    Study(RunArgs),
    /// List the registered manufactured solutions.
    ListSolutions,
    /// Run the algebraic identity suite and print one line per check.
    Verify,
    /// Render the method catalog markdown.
    Catalog {
        /// Write to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Key-value configuration file; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scheme id: heat-jamet, heat-aziz-monk, wave-vanilla,
    /// wave-french-peterson, wave-johnson, wave-walkington.
    #[arg(long)]
    method: Option<String>,
    /// Time polynomial degree.
    #[arg(long)]
    q: Option<usize>,
    /// Space polynomial degree.
    #[arg(long)]
    p: Option<usize>,
    /// Number of spatial elements.
    #[arg(long)]
    elements: Option<usize>,
    /// Number of time slabs.
    #[arg(long)]
    slabs: Option<usize>,
    /// Final time.
    #[arg(long = "T")]
    t_end: Option<f64>,
    /// Diffusivity (heat schemes).
    #[arg(long)]
    nu: Option<f64>,
    /// Wave speed (wave schemes).
    #[arg(long)]
    c: Option<f64>,
    /// Damping coefficient (wave-vanilla only).
    #[arg(long)]
    delta: Option<f64>,
    /// Manufactured solution id (see list-solutions).
    #[arg(long)]
    solution: Option<String>,
    /// Refinement axis for studies: tau or h.
    #[arg(long)]
    refine: Option<String>,
    /// Number of refinement levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Comma-separated norm list: linf-l2, l2-qt, linf-h1, l2-h1, jump, trace-t.
    #[arg(long)]
    norms: Option<String>,
    /// Proceed despite a CFL violation (wave-vanilla).
    #[arg(long)]
    cfl_override: bool,
    /// Override the CFL constant.
    #[arg(long)]
    cfl_constant: Option<f64>,
    /// Output path for the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: csv or json.
    #[arg(long)]
    format: Option<String>,
}

fn config_error(msg: impl std::fmt::Display) -> HarnessError {
    HarnessError::ConfigInvalid(msg.to_string())
}

impl RunArgs {
    /// Merges defaults, config-file values, then flags into a study config.
    fn build_config(&self, single: bool) -> Result<StudyConfig, HarnessError> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                parse_config_file(&text)?
            }
            None => PartialConfig::default(),
        };
        let method = match (&self.method, file.method) {
            (Some(s), _) => {
                Scheme::parse(s).ok_or_else(|| config_error(format!("unknown method `{s}`")))?
            }
            (None, Some(m)) => m,
            (None, None) => return Err(config_error("missing required `method`")),
        };
        let solution = self
            .solution
            .clone()
            .or(file.solution.clone())
            .ok_or_else(|| config_error("missing required `solution`"))?;

        let mut config = StudyConfig::new(method, &solution);
        config.q = method.min_degree().max(1);
        file.apply(&mut config);
        config.scheme = method;
        config.solution = solution;

        if let Some(v) = self.q {
            config.q = v;
        }
        if let Some(v) = self.p {
            config.p = v;
        }
        if let Some(v) = self.elements {
            config.elements = v;
        }
        if let Some(v) = self.slabs {
            config.slabs = v;
        }
        if let Some(v) = self.t_end {
            config.t_end = v;
        }
        if let Some(v) = self.nu {
            config.nu = v;
        }
        if let Some(v) = self.c {
            config.c = v;
        }
        if let Some(v) = self.delta {
            config.delta = v;
        }
        if let Some(v) = &self.refine {
            config.refine = RefineAxis::parse(v)
                .ok_or_else(|| config_error(format!("unknown refine axis `{v}`")))?;
        }
        if let Some(v) = self.levels {
            config.levels = v;
        }
        if let Some(v) = &self.norms {
            let mut norms = Vec::new();
            for part in v.split(',') {
                let part = part.trim();
                norms.push(
                    crate::analysis::NormKind::parse(part)
                        .ok_or_else(|| config_error(format!("unknown norm `{part}`")))?,
                );
            }
            config.norms = norms;
        }
        if self.cfl_override {
            config.cfl_override = true;
        }
        if let Some(v) = self.cfl_constant {
            config.cfl_constant = Some(v);
        }
        if let Some(v) = &self.out {
            config.out = Some(v.display().to_string());
        }
        if let Some(v) = &self.format {
            config.format = ReportFormat::parse(v)
                .ok_or_else(|| config_error(format!("unknown format `{v}`")))?;
        }
        if single {
            config.refine = RefineAxis::None;
            config.levels = 1;
        }
        Ok(config)
    }
}

fn exit_code_for(err: &HarnessError) -> u8 {
    match err {
        HarnessError::ConfigInvalid(_) | HarnessError::UnknownSolutionId(_) => 2,
        HarnessError::Method(MethodError::CflViolation { .. }) => 3,
        HarnessError::Method(MethodError::InvalidSpec(_)) => 2,
        _ => 4,
    }
}

fn run_and_emit(args: &RunArgs, single: bool) -> Result<(), HarnessError> {
    let config = args.build_config(single)?;
    let report = run_study(&config)?;
    let path = config.out.as_ref().map(PathBuf::from);
    let text = emit_report(&report, config.format, path.as_deref())?;
    if path.is_none() {
        println!("{text}");
    } else {
        eprintln!("report written to {}", path.unwrap().display());
    }
    Ok(())
}

/// CLI entry point; returns the process exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => match run_and_emit(&args, true) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code_for(&e))
            }
        },
        Command::Study(args) => match run_and_emit(&args, false) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code_for(&e))
            }
        },
        Command::ListSolutions => {
            for (id, desc) in list_solutions() {
                println!("{id:22} {desc}");
            }
            ExitCode::SUCCESS
        }
        Command::Verify => {
            let checks = run_identity_suite();
            for check in &checks {
                println!("{}", format_check(check));
            }
            if all_passed(&checks) {
                println!("identity suite: {} checks passed", checks.len());
                ExitCode::SUCCESS
            } else {
                eprintln!("identity suite: FAILURES present");
                ExitCode::FAILURE
            }
        }
        Command::Catalog { out } => {
            let text = render_catalog();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(4);
                    }
                    eprintln!("catalog written to {}", path.display());
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
    }
}
