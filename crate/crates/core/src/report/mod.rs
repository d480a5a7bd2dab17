//! Machine-readable report bundles (JSON and CSV) and the timeline plot.
//!
//! Every decimal value in a report is emitted as a [`Score`]: the unrounded
//! value next to a one-decimal display string.

mod svg;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fingerprint::{display1, Fingerprint, GPlusConfig};
use crate::ingest::{Dataset, PrimitiveKind};

pub use svg::{emit_timeline_plot, render_timeline_svg, PlotLayout, TimelineSeries, LAYOUT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Score {
    pub value: f64,
    pub display: Display1,
}

/// One-decimal, round-half-up rendering of a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Display1(f64);

impl Serialize for Display1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&display1(self.0))
    }
}

impl Score {
    pub fn new(value: f64) -> Self {
        Score {
            value,
            display: Display1(value),
        }
    }

    pub fn display(&self) -> String {
        display1(self.value)
    }
}

impl From<f64> for Score {
    fn from(v: f64) -> Self {
        Score::new(v)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelEntry {
    pub index: usize,
    pub element_id: String,
    pub kind: PrimitiveKind,
    /// Position within its kind, 0-based.
    pub kind_index: usize,
    pub name: String,
    pub level: Score,
}

/// A fingerprint labelled with the dataset's primitives.
pub fn fingerprint_entries(dataset: &Dataset, fp: &Fingerprint) -> Result<Vec<LevelEntry>> {
    fp.check_dim(dataset.dim())?;
    Ok(dataset
        .primitives()
        .iter()
        .zip(fp.levels())
        .map(|(p, &level)| LevelEntry {
            index: p.index,
            element_id: p.element_id.clone(),
            kind: p.kind,
            kind_index: dataset.kind_local_index(p.index).map_or(0, |(_, i)| i),
            name: p.name.clone(),
            level: Score::new(level),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Rows for a CSV report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        CsvTable {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Column values for a score: unrounded then display.
    pub fn score_cells(value: f64) -> [String; 2] {
        [value.to_string(), display1(value)]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub report: String,
    pub generated_at: Option<String>,
    pub config: GPlusConfig,
    pub payload: Value,
}

impl ReportBundle {
    pub fn new(report: &str, config: GPlusConfig, payload: impl Serialize) -> Result<Self> {
        let payload = serde_json::to_value(payload)
            .map_err(|e| Error::InvalidConfig(format!("cannot serialize report: {e}")))?;
        Ok(ReportBundle {
            report: report.to_string(),
            generated_at: None,
            config,
            payload,
        })
    }

    pub fn with_timestamp(mut self, ts: Option<String>) -> Self {
        self.generated_at = ts;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are serializable");
        s.push('\n');
        s
    }

    /// CSV body preceded by `#` comment lines echoing the config.
    pub fn to_csv(&self, table: &CsvTable) -> Result<String> {
        let mut out = String::new();
        out.push_str(&format!("# report={}\n", self.report));
        if let Some(ts) = &self.generated_at {
            out.push_str(&format!("# generated_at={ts}\n"));
        }
        out.push_str(&format!(
            "# norm_constant={}\n# norm_mode={}\n# comparison={}\n# epsilon={}\n",
            self.config.norm_constant,
            enum_name(&self.config.norm_mode),
            enum_name(&self.config.comparison),
            self.config.epsilon
        ));
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidConfig(format!("cannot write CSV: {e}"));
        w.write_record(&table.headers).map_err(csv_err)?;
        for row in &table.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidConfig(format!("cannot write CSV: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"));
        Ok(out)
    }
}

fn enum_name(v: &impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}
