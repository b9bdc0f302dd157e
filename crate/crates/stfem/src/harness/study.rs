//! Study configuration and execution: single solves and tau/h refinement
//! sequences with error measurement, timing, and EOC fitting.

use super::solutions::{get_solution, EquationKind, ManufacturedSolution, SolutionParams};
use super::HarnessError;
use crate::analysis::{compute_eoc, error_norms, NormKind};
use crate::methods::{solve, MethodSpec, Scheme};
use crate::spatial::FeSpace;
use crate::temporal::TimeMesh;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RefineAxis {
    Tau,
    H,
    None,
}

impl RefineAxis {
    pub fn parse(s: &str) -> Option<RefineAxis> {
        match s {
            "tau" => Some(RefineAxis::Tau),
            "h" => Some(RefineAxis::H),
            "none" => Some(RefineAxis::None),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s {
            "csv" => Some(ReportFormat::Csv),
            "json" => Some(ReportFormat::Json),
            _ => None,
        }
    }
}

/// Full description of a study: scheme, discretization, manufactured
/// solution, refinement plan, and output.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct StudyConfig {
    pub scheme: Scheme,
    pub q: usize,
    pub p: usize,
    pub nu: f64,
    pub c: f64,
    pub delta: f64,
    pub domain: (f64, f64),
    pub elements: usize,
    pub slabs: usize,
    pub t_end: f64,
    pub solution: String,
    pub refine: RefineAxis,
    pub levels: usize,
    pub norms: Vec<NormKind>,
    pub cfl_override: bool,
    pub cfl_constant: Option<f64>,
    /// Gauss-Legendre points for source-term time integrals (None: 2q + 10).
    pub rhs_points: Option<usize>,
    pub out: Option<String>,
    pub format: ReportFormat,
}

impl StudyConfig {
    pub fn new(scheme: Scheme, solution: &str) -> Self {
        Self {
            scheme,
            q: scheme.min_degree().max(1),
            p: 1,
            nu: 1.0,
            c: 1.0,
            delta: 0.0,
            domain: (0.0, 1.0),
            elements: 16,
            slabs: 8,
            t_end: 1.0,
            solution: solution.to_string(),
            refine: RefineAxis::None,
            levels: 1,
            norms: vec![NormKind::LinfL2],
            cfl_override: false,
            cfl_constant: None,
            rhs_points: None,
            out: None,
            format: ReportFormat::Json,
        }
    }

    fn method_spec(&self) -> MethodSpec {
        MethodSpec {
            scheme: self.scheme,
            nu: self.nu,
            c: self.c,
            delta: self.delta,
            q: self.q,
            p: self.p,
            cfl_constant: self.cfl_constant,
            cfl_override: self.cfl_override,
        }
    }

    fn solution_params(&self) -> SolutionParams {
        SolutionParams {
            kind: if self.scheme.is_heat() {
                EquationKind::Heat
            } else {
                EquationKind::Wave
            },
            nu: self.nu,
            c: self.c,
            delta: self.delta,
            q: self.q,
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        if self.levels == 0 {
            return Err(HarnessError::ConfigInvalid("need at least one level".into()));
        }
        if self.refine == RefineAxis::None && self.levels > 1 {
            return Err(HarnessError::ConfigInvalid(
                "multiple levels require a refinement axis (tau or h)".into(),
            ));
        }
        if self.domain != (0.0, 1.0) {
            return Err(HarnessError::ConfigInvalid(format!(
                "manufactured solutions are defined on (0, 1); got ({}, {})",
                self.domain.0, self.domain.1
            )));
        }
        if !(self.t_end > 0.0) {
            return Err(HarnessError::ConfigInvalid(format!(
                "final time must be positive, got {}",
                self.t_end
            )));
        }
        if self.norms.is_empty() {
            return Err(HarnessError::ConfigInvalid("no norms requested".into()));
        }
        self.method_spec().validate()?;
        Ok(())
    }

    /// Mesh resolution at a refinement level: the chosen axis halves per level.
    fn resolution(&self, level: usize) -> (usize, usize) {
        match self.refine {
            RefineAxis::Tau => (self.elements, self.slabs << level),
            RefineAxis::H => (self.elements << level, self.slabs),
            RefineAxis::None => (self.elements, self.slabs),
        }
    }

    fn level_param(&self, level: usize) -> f64 {
        let (elements, slabs) = self.resolution(level);
        match self.refine {
            RefineAxis::Tau | RefineAxis::None => self.t_end / slabs as f64,
            RefineAxis::H => (self.domain.1 - self.domain.0) / elements as f64,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ErrorEntry {
    pub norm: String,
    pub value: f64,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct LevelResult {
    pub level: usize,
    pub param: f64,
    pub elements: usize,
    pub slabs: usize,
    pub errors: Vec<ErrorEntry>,
    pub max_slab_residual: f64,
    pub cfl_margin: Option<f64>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct NormEoc {
    pub norm: String,
    /// `None` when errors vanish (zero-data runs) or a single level ran.
    pub orders: Option<Vec<f64>>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct StudyReport {
    pub library_version: String,
    pub config: StudyConfig,
    pub levels: Vec<LevelResult>,
    pub eoc: Vec<NormEoc>,
}

impl StudyReport {
    /// Copy with wall-clock entries zeroed; reports are otherwise fully
    /// deterministic for a given configuration.
    pub fn with_zeroed_timings(&self) -> StudyReport {
        let mut r = self.clone();
        for l in &mut r.levels {
            l.wall_seconds = 0.0;
        }
        r
    }
}

fn solve_and_measure(
    config: &StudyConfig,
    manufactured: &ManufacturedSolution,
    elements: usize,
    slabs: usize,
) -> Result<(Vec<(NormKind, f64)>, f64, Option<f64>), HarnessError> {
    let space = FeSpace::new(config.domain.0, config.domain.1, elements, config.p)?;
    let ops = space.assemble()?;
    let mesh = TimeMesh::uniform(config.t_end, slabs)?;
    let spec = config.method_spec();
    let u0 = |x: f64| manufactured.u0(x);
    let du0 = |x: f64| manufactured.du0(x);
    let v0 = |x: f64| manufactured.v0(x);
    let data = manufactured.problem_data(&u0, &du0, &v0);
    let sol = solve(&spec, &space, &ops, &mesh, &data, config.rhs_points)?;
    let errors = error_norms(&sol, &space, &manufactured.exact(), &config.norms)?;
    let max_residual = sol
        .slab_residuals
        .iter()
        .fold(0.0f64, |m, r| m.max(*r));
    Ok((errors, max_residual, sol.cfl_margin))
}

/// Doubles the non-refined axis at the finest level and rejects the study if
/// that changes any requested error by more than 10 percent (the fixed axis
/// would contaminate the measured rates).
fn preflight(
    config: &StudyConfig,
    manufactured: &ManufacturedSolution,
) -> Result<(), HarnessError> {
    let finest = config.levels - 1;
    let (elements, slabs) = config.resolution(finest);
    let (doubled_elements, doubled_slabs, axis_name) = match config.refine {
        RefineAxis::Tau => (elements * 2, slabs, "spatial (h)"),
        RefineAxis::H => (elements, slabs * 2, "temporal (tau)"),
        RefineAxis::None => return Ok(()),
    };
    let (base, _, _) = solve_and_measure(config, manufactured, elements, slabs)?;
    let (doubled, _, _) = solve_and_measure(config, manufactured, doubled_elements, doubled_slabs)?;
    for ((kind, e1), (_, e2)) in base.iter().zip(&doubled) {
        if *e1 > 1e-10 && (e1 - e2).abs() > 0.1 * e1 {
            return Err(HarnessError::ConfigInvalid(format!(
                "fixed {axis_name} axis is too coarse: at the finest level the {} error \
                 changes from {e1:.6e} to {e2:.6e} when the fixed axis is doubled, \
                 contaminating the refinement study",
                kind.name()
            )));
        }
    }
    Ok(())
}

/// Executes every level of a study sequentially and fits experimental orders
/// of convergence per requested norm.
pub fn run_study(config: &StudyConfig) -> Result<StudyReport, HarnessError> {
    config.validate()?;
    let manufactured = get_solution(&config.solution, &config.solution_params())?;
    if config.levels > 1 {
        preflight(config, &manufactured)?;
    }

    let mut levels = Vec::with_capacity(config.levels);
    for level in 0..config.levels {
        let (elements, slabs) = config.resolution(level);
        let start = Instant::now();
        let (errors, max_slab_residual, cfl_margin) =
            solve_and_measure(config, &manufactured, elements, slabs)?;
        let wall_seconds = start.elapsed().as_secs_f64();
        levels.push(LevelResult {
            level,
            param: config.level_param(level),
            elements,
            slabs,
            errors: errors
                .iter()
                .map(|(kind, value)| ErrorEntry {
                    norm: kind.name().to_string(),
                    value: *value,
                })
                .collect(),
            max_slab_residual,
            cfl_margin,
            wall_seconds,
        });
    }

    let params: Vec<f64> = (0..config.levels).map(|l| config.level_param(l)).collect();
    let mut eoc = Vec::with_capacity(config.norms.len());
    for (k, kind) in config.norms.iter().enumerate() {
        let errs: Vec<f64> = levels.iter().map(|l| l.errors[k].value).collect();
        let orders = if config.levels >= 2 && errs.iter().all(|e| *e > 0.0) {
            Some(compute_eoc(&params, &errs)?.orders)
        } else {
            None
        };
        eoc.push(NormEoc {
            norm: kind.name().to_string(),
            orders,
        });
    }

    Ok(StudyReport {
        library_version: crate::version().to_string(),
        config: config.clone(),
        levels,
        eoc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_study_reports_null_orders() {
        let mut config = StudyConfig::new(Scheme::HeatJamet, "zero");
        config.q = 1;
        config.p = 1;
        config.elements = 4;
        config.slabs = 2;
        config.t_end = 0.5;
        config.refine = RefineAxis::Tau;
        config.levels = 2;
        let report = run_study(&config).unwrap();
        assert_eq!(report.levels.len(), 2);
        for level in &report.levels {
            for e in &level.errors {
                assert_eq!(e.value, 0.0);
            }
        }
        assert!(report.eoc.iter().all(|e| e.orders.is_none()));
    }

    #[test]
    fn config_validation() {
        let mut config = StudyConfig::new(Scheme::HeatJamet, "heat_sine");
        config.levels = 0;
        assert!(matches!(
            run_study(&config),
            Err(HarnessError::ConfigInvalid(_))
        ));
        let mut config = StudyConfig::new(Scheme::HeatJamet, "heat_sine");
        config.levels = 3;
        config.refine = RefineAxis::None;
        assert!(matches!(
            run_study(&config),
            Err(HarnessError::ConfigInvalid(_))
        ));
        let config = StudyConfig::new(Scheme::HeatJamet, "nope");
        assert!(matches!(
            run_study(&config),
            Err(HarnessError::UnknownSolutionId(_))
        ));
    }

    #[test]
    fn preflight_rejects_coarse_fixed_axis() {
        // tau refinement with a very coarse spatial mesh: the h error
        // dominates and the guard must fire, naming the spatial axis.
        let mut config = StudyConfig::new(Scheme::HeatJamet, "heat_sine");
        config.q = 2;
        config.p = 1;
        config.elements = 3;
        config.slabs = 2;
        config.t_end = 0.5;
        config.refine = RefineAxis::Tau;
        config.levels = 3;
        match run_study(&config) {
            Err(HarnessError::ConfigInvalid(msg)) => {
                assert!(msg.contains("spatial"), "diagnostic should name the axis: {msg}");
            }
            other => panic!("expected ConfigInvalid, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn small_tau_study_converges_at_expected_order() {
        let mut config = StudyConfig::new(Scheme::HeatJamet, "heat_sine");
        config.q = 1;
        config.p = 2;
        config.elements = 24;
        config.slabs = 2;
        config.t_end = 0.5;
        config.refine = RefineAxis::Tau;
        config.levels = 3;
        let report = run_study(&config).unwrap();
        let orders = report.eoc[0].orders.as_ref().unwrap();
        let last = *orders.last().unwrap();
        assert!((last - 2.0).abs() < 0.25, "order {last}");
        // Rerunning the study reproduces errors to high precision.
        let report2 = run_study(&config).unwrap();
        for (a, b) in report.levels.iter().zip(&report2.levels) {
            for (ea, eb) in a.errors.iter().zip(&b.errors) {
                assert!((ea.value - eb.value).abs() <= 1e-12 * ea.value.abs());
            }
        }
    }
}
