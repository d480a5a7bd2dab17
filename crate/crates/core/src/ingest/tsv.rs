use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use csv::{ReaderBuilder, StringRecord};

use crate::error::{Error, Result};

/// A tab-separated file with a header row, restricted to the named columns.
pub(crate) struct Table {
    path: PathBuf,
    columns: Vec<usize>,
    rows: Vec<(u64, StringRecord)>,
}

pub(crate) struct Row<'a> {
    pub path: &'a Path,
    pub line: u64,
    record: &'a StringRecord,
    columns: &'a [usize],
}

impl Table {
    pub fn read(path: &Path, required: &[&str]) -> Result<Table> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut reader = ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .has_headers(true)
            .flexible(false)
            .from_reader(file);
        let parse_err = |line: u64, message: String| Error::Parse {
            file: path.to_path_buf(),
            line,
            message,
        };

        let headers = reader
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .clone();
        let columns = required
            .iter()
            .map(|name| {
                headers
                    .iter()
                    .position(|h| h.trim() == *name)
                    .ok_or_else(|| parse_err(1, format!("missing required column {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                parse_err(line, e.to_string())
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            if record.iter().all(|f| f.trim().is_empty()) {
                continue;
            }
            rows.push((line, record));
        }
        Ok(Table {
            path: path.to_path_buf(),
            columns,
            rows,
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = Row<'_>> {
        self.rows.iter().map(|(line, record)| Row {
            path: &self.path,
            line: *line,
            record,
            columns: &self.columns,
        })
    }
}

impl Row<'_> {
    /// Field for the `i`th required column, trimmed.
    pub fn get(&self, i: usize) -> &str {
        self.record.get(self.columns[i]).unwrap_or("").trim()
    }

    pub fn parse<T: FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let raw = self.get(i);
        raw.parse()
            .map_err(|_| self.error(format!("{what} {raw:?} is not valid")))
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            file: self.path.to_path_buf(),
            line: self.line,
            message: message.into(),
        }
    }

    /// Attach this row's location to an error raised while applying it.
    pub fn locate(&self, err: Error) -> Error {
        let at = format!("{}:{}", self.path.display(), self.line);
        match err {
            Error::Integrity(m) => Error::Integrity(format!("{at}: {m}")),
            Error::Dimension(m) => Error::Dimension(format!("{at}: {m}")),
            Error::InvalidLevel(m) => self.error(m),
            Error::MalformedLabel { label, reason } => {
                self.error(format!("MalformedLabel {label:?}: {reason}"))
            }
            other => other,
        }
    }
}
