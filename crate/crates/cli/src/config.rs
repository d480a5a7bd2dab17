use std::path::Path;

use gplus_core::{Comparison, GPlusConfig, NormMode};

use crate::{ComparisonArg, Failure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormArg {
    Pinned(f64),
    Derived,
}

pub(crate) fn parse_norm(s: &str) -> Result<NormArg, String> {
    if s == "derived" {
        return Ok(NormArg::Derived);
    }
    let value = s
        .strip_prefix("pinned:")
        .ok_or_else(|| format!("expected pinned:<value> or derived, got {s:?}"))?;
    let v: f64 = value
        .parse()
        .map_err(|_| format!("{value:?} is not a number"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("norm constant must be positive, got {v}"));
    }
    Ok(NormArg::Pinned(v))
}

/// Read `key = value` lines over the defaults. Blank lines and `#` comments
/// are ignored; unknown keys are rejected so typos do not pass silently.
pub fn parse_config_file(path: &Path) -> Result<GPlusConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut config = GPlusConfig::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("{}:{}", path.display(), n + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}: expected key=value", at()))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || {
            value
                .parse::<f64>()
                .map_err(|_| format!("{}: {key} must be a number, got {value:?}", at()))
        };
        match key {
            "norm_constant" => config.norm_constant = number()?,
            "epsilon" => config.epsilon = number()?,
            "norm_mode" => {
                config.norm_mode = match value {
                    "pinned" => NormMode::Pinned,
                    "derived" | "derived_from_occupations" => NormMode::DerivedFromOccupations,
                    _ => return Err(format!("{}: unknown norm_mode {value:?}", at())),
                }
            }
            "comparison" => {
                config.comparison = match value {
                    "meets" | "meets_minimum" => Comparison::MeetsMinimum,
                    "strict" | "strictly_greater" => Comparison::StrictlyGreater,
                    _ => return Err(format!("{}: unknown comparison {value:?}", at())),
                }
            }
            _ => return Err(format!("{}: unknown key {key:?}", at())),
        }
    }
    Ok(config)
}

/// Defaults, then the config file, then flags. The result is validated but
/// not yet resolved against a dataset.
pub(crate) fn assemble(
    file: Option<&Path>,
    norm: Option<NormArg>,
    comparison: Option<ComparisonArg>,
) -> Result<GPlusConfig, Failure> {
    let mut config = match file {
        Some(p) => parse_config_file(p).map_err(gplus_core::Error::InvalidConfig)?,
        None => GPlusConfig::default(),
    };
    match norm {
        Some(NormArg::Pinned(v)) => {
            config.norm_mode = NormMode::Pinned;
            config.norm_constant = v;
        }
        Some(NormArg::Derived) => config.norm_mode = NormMode::DerivedFromOccupations,
        None => {}
    }
    match comparison {
        Some(ComparisonArg::Meets) => config.comparison = Comparison::MeetsMinimum,
        Some(ComparisonArg::Strict) => config.comparison = Comparison::StrictlyGreater,
        None => {}
    }
    config.validate()?;
    Ok(config)
}
