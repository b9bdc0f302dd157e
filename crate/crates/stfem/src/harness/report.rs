//! Report emission: JSON (lossless, serde round-trip) and CSV (one row per
//! level, one error column and one EOC column per norm).

use super::study::{ReportFormat, StudyReport};
use super::HarnessError;
use std::path::Path;

pub fn report_to_json(report: &StudyReport) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn report_from_json(text: &str) -> Result<StudyReport, HarnessError> {
    Ok(serde_json::from_str(text)?)
}

/// Columns: `level,param,<err per norm>,<eoc per norm>`. EOC cells are empty
/// on the first row (orders attach to transitions) and for null orders.
pub fn report_to_csv(report: &StudyReport) -> String {
    let norms: Vec<&str> = report
        .config
        .norms
        .iter()
        .map(|k| k.name())
        .collect();
    let mut out = String::from("level,param");
    for n in &norms {
        out.push_str(&format!(",err_{n}"));
    }
    for n in &norms {
        out.push_str(&format!(",eoc_{n}"));
    }
    out.push('\n');
    for (row, level) in report.levels.iter().enumerate() {
        out.push_str(&format!("{},{:.17e}", level.level, level.param));
        for e in &level.errors {
            out.push_str(&format!(",{:.17e}", e.value));
        }
        for eoc in &report.eoc {
            match (&eoc.orders, row) {
                (Some(orders), r) if r >= 1 => out.push_str(&format!(",{:.6}", orders[r - 1])),
                _ => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Renders the report in the requested format and writes it to `path` when
/// given; the rendered text is returned either way.
pub fn emit_report(
    report: &StudyReport,
    format: ReportFormat,
    path: Option<&Path>,
) -> Result<String, HarnessError> {
    let text = match format {
        ReportFormat::Json => report_to_json(report)?,
        ReportFormat::Csv => report_to_csv(report),
    };
    if let Some(p) = path {
        if let Some(dir) = p.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        std::fs::write(p, &text)?;
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::super::study::{run_study, RefineAxis, StudyConfig};
    use super::*;
    use crate::methods::Scheme;

    fn small_report(levels: usize) -> StudyReport {
        let mut config = StudyConfig::new(Scheme::HeatJamet, "heat_sine");
        config.q = 1;
        config.p = 2;
        config.elements = 16;
        config.slabs = 2;
        config.t_end = 0.5;
        if levels > 1 {
            config.refine = RefineAxis::Tau;
        }
        config.levels = levels;
        run_study(&config).unwrap()
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let report = small_report(3);
        let text = report_to_json(&report).unwrap();
        let parsed = report_from_json(&text).unwrap();
        let again = report_to_json(&parsed).unwrap();
        assert_eq!(text, again);
        assert_eq!(parsed.levels.len(), 3);
        for (a, b) in report.levels.iter().zip(&parsed.levels) {
            assert_eq!(a.errors[0].value.to_bits(), b.errors[0].value.to_bits());
        }
    }

    #[test]
    fn csv_shape_single_level() {
        let report = small_report(1);
        let csv = report_to_csv(&report);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("level,param,err_linf-l2,eoc_linf-l2"));
        // EOC cell empty on the only row.
        assert!(lines[1].ends_with(','));
    }

    #[test]
    fn csv_shape_three_levels_has_two_eoc_values() {
        let report = small_report(3);
        let csv = report_to_csv(&report);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].ends_with(','));
        let eoc_cells: Vec<&str> = lines[2].split(',').skip(3).collect();
        assert_eq!(eoc_cells.len(), 1);
        assert!(!eoc_cells[0].is_empty());
        let eoc_cells: Vec<&str> = lines[3].split(',').skip(3).collect();
        assert!(!eoc_cells[0].is_empty());
    }

    #[test]
    fn determinism_modulo_timings() {
        let a = small_report(2).with_zeroed_timings();
        let b = small_report(2).with_zeroed_timings();
        assert_eq!(
            report_to_json(&a).unwrap(),
            report_to_json(&b).unwrap()
        );
    }
}
