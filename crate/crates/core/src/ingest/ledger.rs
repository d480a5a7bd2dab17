use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingerprint::{Fingerprint, MAX_LEVEL};

use super::dataset::Dataset;
use super::tsv::{Row, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlMode {
    #[serde(rename = "teleop", alias = "analogous_teleop")]
    AnalogousTeleop,
    Autonomous,
}

impl ControlMode {
    pub const ALL: [ControlMode; 2] = [ControlMode::AnalogousTeleop, ControlMode::Autonomous];

    pub fn as_str(self) -> &'static str {
        match self {
            ControlMode::AnalogousTeleop => "teleop",
            ControlMode::Autonomous => "autonomous",
        }
    }
}

impl FromStr for ControlMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "teleop" | "analogousteleop" | "analogousteleoperation" => {
                Ok(ControlMode::AnalogousTeleop)
            }
            "autonomous" | "auto" => Ok(ControlMode::Autonomous),
            _ => Err(format!("unknown control mode {s:?}")),
        }
    }
}

impl fmt::Display for ControlMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Portfolio subset a subtask belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeTag {
    Trl1,
    Eoy22,
    Llm1,
    Uat,
    Other(String),
}

impl TypeTag {
    pub fn parse(raw: &str) -> TypeTag {
        match raw.to_ascii_uppercase().as_str() {
            "TRL-1" => TypeTag::Trl1,
            "EOY-22" => TypeTag::Eoy22,
            "LLM-1" => TypeTag::Llm1,
            "UAT" => TypeTag::Uat,
            _ => TypeTag::Other(raw.to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            TypeTag::Trl1 => "TRL-1",
            TypeTag::Eoy22 => "EOY-22",
            TypeTag::Llm1 => "LLM-1",
            TypeTag::Uat => "UAT",
            TypeTag::Other(s) => s,
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubtaskRecord {
    pub subtask_id: String,
    pub description: String,
    pub fingerprint: Fingerprint,
    pub type_tag: TypeTag,
    pub first_success_date: NaiveDate,
    pub control_mode: ControlMode,
    pub succeeded: bool,
}

fn parse_bool(raw: &str) -> Option<bool> {
    match raw.to_ascii_lowercase().as_str() {
        "true" | "yes" | "y" | "1" => Some(true),
        "false" | "no" | "n" | "0" => Some(false),
        _ => None,
    }
}

/// Decode a subtask fingerprint field.
///
/// Two encodings are accepted: sparse `element_id=level` pairs separated by
/// `;` (unlisted dimensions are 0), or a dense `;`-separated list of exactly
/// `dim` levels in canonical order.
fn parse_fingerprint(row: &Row<'_>, raw: &str, dataset: &Dataset) -> Result<Fingerprint> {
    let dim = dataset.dim();
    let parts: Vec<&str> = raw
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    let level = |s: &str| -> Result<f64> {
        let v: f64 = s
            .parse()
            .map_err(|_| row.error(format!("level {s:?} is not a number")))?;
        if !(v.is_finite() && (0.0..=MAX_LEVEL).contains(&v)) {
            return Err(row.error(format!("level {v} is outside [0, {MAX_LEVEL}]")));
        }
        Ok(v)
    };

    let sparse = parts.iter().filter(|p| p.contains('=')).count();
    if sparse > 0 && sparse != parts.len() {
        return Err(row.error("fingerprint mixes element_id=level pairs with bare levels"));
    }

    let mut levels = vec![0.0; dim];
    if sparse > 0 {
        let mut seen = vec![false; dim];
        for part in parts {
            let (id, value) = part.split_once('=').expect("checked above");
            let prim = dataset.primitive_by_id(id.trim()).ok_or_else(|| {
                row.locate(Error::Dimension(format!(
                    "subtask fingerprint names unknown primitive {:?}",
                    id.trim()
                )))
            })?;
            if std::mem::replace(&mut seen[prim.index], true) {
                return Err(row.error(format!("primitive {} listed twice", prim.element_id)));
            }
            levels[prim.index] = level(value.trim())?;
        }
    } else if !parts.is_empty() {
        if parts.len() != dim {
            return Err(row.locate(Error::Dimension(format!(
                "subtask fingerprint has {} levels, expected {dim}",
                parts.len()
            ))));
        }
        for (slot, part) in levels.iter_mut().zip(parts) {
            *slot = level(part)?;
        }
    }
    Ok(Fingerprint::new(levels).expect("levels validated"))
}

/// Load the subtask portfolio ledger, sorted by first success date and then
/// subtask id.
pub fn load_subtask_ledger(path: &Path, dataset: &Dataset) -> Result<Vec<SubtaskRecord>> {
    let table = Table::read(
        path,
        &[
            "subtask_id",
            "description",
            "type_tag",
            "first_success_date",
            "control_mode",
            "succeeded",
            "fingerprint",
        ],
    )?;
    let mut records = Vec::new();
    let mut keys = std::collections::HashSet::new();
    for row in table.rows() {
        let subtask_id = row.get(0).to_string();
        if subtask_id.is_empty() {
            return Err(row.error("empty subtask_id"));
        }
        let date_raw = row.get(3);
        let first_success_date =
            NaiveDate::parse_from_str(date_raw, "%Y-%m-%d").map_err(|_| Error::BadDate {
                file: path.to_path_buf(),
                line: row.line,
                value: date_raw.to_string(),
            })?;
        let control_mode: ControlMode = row.get(4).parse().map_err(|e: String| row.error(e))?;
        let succeeded = parse_bool(row.get(5))
            .ok_or_else(|| row.error(format!("succeeded {:?} is not a boolean", row.get(5))))?;
        if !keys.insert((subtask_id.clone(), control_mode)) {
            return Err(row.locate(Error::Integrity(format!(
                "duplicate subtask {subtask_id} under {control_mode}"
            ))));
        }
        let fingerprint = parse_fingerprint(&row, row.get(6), dataset)?;
        records.push(SubtaskRecord {
            subtask_id,
            description: row.get(1).to_string(),
            fingerprint,
            type_tag: TypeTag::parse(row.get(2)),
            first_success_date,
            control_mode,
            succeeded,
        });
    }
    records.sort_by(|a, b| {
        a.first_success_date
            .cmp(&b.first_success_date)
            .then_with(|| a.subtask_id.cmp(&b.subtask_id))
            .then_with(|| a.control_mode.cmp(&b.control_mode))
    });
    Ok(records)
}
