//! Flat key-value configuration files.
//!
//! Grammar: one `key = value` pair per line; blank lines and lines starting
//! with `#` are ignored; `[section]` headers are allowed for grouping and
//! carry no meaning. Keys mirror the CLI flags (`method`, `q`, `p`,
//! `elements`, `slabs`, `T`, `nu`, `c`, `delta`, `solution`, `refine`,
//! `levels`, `norms`, `cfl-override`, `cfl-constant`, `out`, `format`);
//! `norms` is a comma-separated list. CLI flags override file values.

use super::study::{RefineAxis, ReportFormat, StudyConfig};
use super::HarnessError;
use crate::analysis::NormKind;
use crate::methods::Scheme;

/// Parsed config-file content; every field is optional so CLI flags can
/// fill or override.
#[derive(Debug, Default, Clone)]
pub struct PartialConfig {
    pub method: Option<Scheme>,
    pub q: Option<usize>,
    pub p: Option<usize>,
    pub elements: Option<usize>,
    pub slabs: Option<usize>,
    pub t_end: Option<f64>,
    pub nu: Option<f64>,
    pub c: Option<f64>,
    pub delta: Option<f64>,
    pub solution: Option<String>,
    pub refine: Option<RefineAxis>,
    pub levels: Option<usize>,
    pub norms: Option<Vec<NormKind>>,
    pub cfl_override: Option<bool>,
    pub cfl_constant: Option<f64>,
    pub out: Option<String>,
    pub format: Option<ReportFormat>,
}

fn bad(line_no: usize, msg: impl std::fmt::Display) -> HarnessError {
    HarnessError::ConfigInvalid(format!("config file line {line_no}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(line_no: usize, key: &str, v: &str) -> Result<T, HarnessError> {
    v.parse()
        .map_err(|_| bad(line_no, format!("cannot parse `{v}` for key `{key}`")))
}

pub fn parse_config_file(text: &str) -> Result<PartialConfig, HarnessError> {
    let mut out = PartialConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(bad(line_no, format!("expected `key = value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "method" => {
                out.method = Some(
                    Scheme::parse(value)
                        .ok_or_else(|| bad(line_no, format!("unknown method `{value}`")))?,
                )
            }
            "q" => out.q = Some(parse_num(line_no, key, value)?),
            "p" => out.p = Some(parse_num(line_no, key, value)?),
            "elements" => out.elements = Some(parse_num(line_no, key, value)?),
            "slabs" => out.slabs = Some(parse_num(line_no, key, value)?),
            "T" => out.t_end = Some(parse_num(line_no, key, value)?),
            "nu" => out.nu = Some(parse_num(line_no, key, value)?),
            "c" => out.c = Some(parse_num(line_no, key, value)?),
            "delta" => out.delta = Some(parse_num(line_no, key, value)?),
            "solution" => out.solution = Some(value.to_string()),
            "refine" => {
                out.refine = Some(
                    RefineAxis::parse(value)
                        .ok_or_else(|| bad(line_no, format!("unknown refine axis `{value}`")))?,
                )
            }
            "levels" => out.levels = Some(parse_num(line_no, key, value)?),
            "norms" => {
                let mut norms = Vec::new();
                for part in value.split(',') {
                    let part = part.trim();
                    norms.push(
                        NormKind::parse(part)
                            .ok_or_else(|| bad(line_no, format!("unknown norm `{part}`")))?,
                    );
                }
                out.norms = Some(norms);
            }
            "cfl-override" => {
                out.cfl_override = Some(match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return Err(bad(line_no, format!("cannot parse bool `{value}`"))),
                })
            }
            "cfl-constant" => out.cfl_constant = Some(parse_num(line_no, key, value)?),
            "out" => out.out = Some(value.to_string()),
            "format" => {
                out.format = Some(
                    ReportFormat::parse(value)
                        .ok_or_else(|| bad(line_no, format!("unknown format `{value}`")))?,
                )
            }
            other => return Err(bad(line_no, format!("unknown key `{other}`"))),
        }
    }
    Ok(out)
}

impl PartialConfig {
    /// Writes the file values into `config` (fields left out keep their
    /// current values).
    pub fn apply(&self, config: &mut StudyConfig) {
        if let Some(v) = self.method {
            config.scheme = v;
        }
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
        if let Some(v) = &self.solution {
            config.solution = v.clone();
        }
        if let Some(v) = self.refine {
            config.refine = v;
        }
        if let Some(v) = self.levels {
            config.levels = v;
        }
        if let Some(v) = &self.norms {
            config.norms = v.clone();
        }
        if let Some(v) = self.cfl_override {
            config.cfl_override = v;
        }
        if let Some(v) = self.cfl_constant {
            config.cfl_constant = Some(v);
        }
        if let Some(v) = &self.out {
            config.out = Some(v.clone());
        }
        if let Some(v) = self.format {
            config.format = v;
        }
    }
}
