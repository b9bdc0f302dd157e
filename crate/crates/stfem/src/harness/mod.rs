//! Study orchestration: manufactured solutions, configuration, single and
//! refinement runs, and report emission.

mod config_file;
mod report;
mod solutions;
mod study;

pub use config_file::{parse_config_file, PartialConfig};
pub use report::{emit_report, report_from_json, report_to_csv, report_to_json};
pub use solutions::{
    get_solution, list_solutions, EquationKind, ManufacturedSolution, SolutionParams,
};
pub use study::{
    run_study, ErrorEntry, LevelResult, NormEoc, RefineAxis, ReportFormat, StudyConfig,
    StudyReport,
};

use crate::analysis::AnalysisError;
use crate::methods::MethodError;
use crate::spatial::SpatialError;
use crate::temporal::TemporalError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("unknown manufactured solution id `{0}`")]
    UnknownSolutionId(String),
    #[error("manufactured solution `{id}` inconsistent at (x, t) = ({x}, {t}): residual {residual:.3e}")]
    InconsistentSolution {
        id: String,
        residual: f64,
        x: f64,
        t: f64,
    },
    #[error(transparent)]
    Method(#[from] MethodError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Spatial(#[from] SpatialError),
    #[error(transparent)]
    Temporal(#[from] TemporalError),
    #[error("report I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("report serialization failed: {0}")]
    Serialization(#[from] serde_json::Error),
}
