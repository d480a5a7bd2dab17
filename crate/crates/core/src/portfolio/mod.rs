//! Work-fingerprint inference from a subtask portfolio, performable-task
//! counting, cumulative timelines and trend forecasts.

mod trend;

use std::collections::BTreeSet;

use chrono::NaiveDate;
use serde::Serialize;

use crate::bounds::BoundSet;
use crate::error::Result;
use crate::exec::Execution;
use crate::fingerprint::{gplus, is_performable, Fingerprint, GPlusConfig};
use crate::ingest::{ControlMode, SubtaskRecord, TaskId};

pub use trend::{fit_line, forecast, months_between, LineFit, TrendForecast, DAYS_PER_MONTH};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortfolioEvaluation {
    pub work_fingerprint: Fingerprint,
    pub gplus_score: f64,
    /// Ids of the records merged into the work fingerprint, in ledger order.
    pub contributing: Vec<String>,
    pub as_of: Option<NaiveDate>,
    /// `None` means records of every control mode were used.
    pub mode: Option<ControlMode>,
}

fn selects(r: &SubtaskRecord, mode: Option<ControlMode>, as_of: Option<NaiveDate>) -> bool {
    r.succeeded
        && mode.is_none_or(|m| r.control_mode == m)
        && as_of.is_none_or(|d| r.first_success_date <= d)
}

fn check_dims(records: &[SubtaskRecord], dim: usize) -> Result<()> {
    records
        .iter()
        .try_for_each(|r| r.fingerprint.check_dim(dim))
}

/// Infer a work fingerprint as the componentwise max over the succeeded
/// records matching `mode`, first succeeding on or before `as_of`. An empty
/// selection gives the zero fingerprint.
pub fn evaluate_portfolio(
    records: &[SubtaskRecord],
    dim: usize,
    mode: Option<ControlMode>,
    as_of: Option<NaiveDate>,
    config: &GPlusConfig,
) -> Result<PortfolioEvaluation> {
    check_dims(records, dim)?;
    let mut work = Fingerprint::zeros(dim);
    let mut contributing = Vec::new();
    for r in records.iter().filter(|r| selects(r, mode, as_of)) {
        work = work.join(&r.fingerprint)?;
        contributing.push(r.subtask_id.clone());
    }
    Ok(PortfolioEvaluation {
        gplus_score: gplus(&work, config),
        work_fingerprint: work,
        contributing,
        as_of,
        mode,
    })
}

/// Ids of every task whose bound is performable with `work`, ascending.
pub fn count_performable(
    work: &Fingerprint,
    task_bounds: &BoundSet<TaskId>,
    config: &GPlusConfig,
    exec: Execution,
) -> Result<Vec<TaskId>> {
    task_bounds
        .bounds
        .values()
        .try_for_each(|fp| fp.check_dim(work.dim()))?;
    let entries: Vec<(&TaskId, &Fingerprint)> = task_bounds.bounds.iter().collect();
    Ok(exec
        .filter(&entries, |(_, fp)| is_performable(work, fp, config))
        .into_iter()
        .map(|(id, _)| **id)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimelinePoint {
    pub date: NaiveDate,
    pub gplus_score: f64,
    pub performable_task_count: usize,
    /// Type tags of the records first succeeding on this date.
    pub type_tags: Vec<String>,
}

/// One point per distinct first-success date among the selected records,
/// each evaluated cumulatively over everything up to that date.
pub fn build_timeline(
    records: &[SubtaskRecord],
    dim: usize,
    mode: Option<ControlMode>,
    task_bounds: Option<&BoundSet<TaskId>>,
    config: &GPlusConfig,
    exec: Execution,
) -> Result<Vec<TimelinePoint>> {
    check_dims(records, dim)?;
    let mut selected: Vec<&SubtaskRecord> =
        records.iter().filter(|r| selects(r, mode, None)).collect();
    selected.sort_by_key(|r| r.first_success_date);

    let mut work = Fingerprint::zeros(dim);
    let mut points = Vec::new();
    for group in selected.chunk_by(|a, b| a.first_success_date == b.first_success_date) {
        let mut tags = BTreeSet::new();
        for r in group {
            work = work.join(&r.fingerprint)?;
            tags.insert(r.type_tag.as_str().to_string());
        }
        let performable_task_count = match task_bounds {
            Some(b) => count_performable(&work, b, config, exec)?.len(),
            None => 0,
        };
        points.push(TimelinePoint {
            date: group[0].first_success_date,
            gplus_score: gplus(&work, config),
            performable_task_count,
            type_tags: tags.into_iter().collect(),
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundKind;
    use crate::ingest::TypeTag;

    fn record(id: &str, levels: &[f64], date: &str, mode: ControlMode, ok: bool) -> SubtaskRecord {
        SubtaskRecord {
            subtask_id: id.into(),
            description: String::new(),
            fingerprint: Fingerprint::new(levels.to_vec()).unwrap(),
            type_tag: TypeTag::Uat,
            first_success_date: date.parse().unwrap(),
            control_mode: mode,
            succeeded: ok,
        }
    }

    use ControlMode::{AnalogousTeleop as T, Autonomous as A};

    #[test]
    fn empty_portfolio_is_zero() {
        let e = evaluate_portfolio(&[], 5, Some(A), None, &GPlusConfig::default()).unwrap();
        assert_eq!(e.work_fingerprint, Fingerprint::zeros(5));
        assert_eq!(e.gplus_score, 0.0);
        assert!(e.contributing.is_empty());
    }

    #[test]
    fn two_records_merge() {
        let config = GPlusConfig::pinned(10.0).unwrap();
        let recs = [
            record("a", &[1.0, 3.0, 0.0], "2022-01-01", T, true),
            record("b", &[2.0, 0.5, 1.0], "2022-02-01", T, true),
        ];
        let e = evaluate_portfolio(&recs, 3, Some(T), None, &config).unwrap();
        // max: [2, 3, 1], sum 6, g+ = 6 * 100 / 10
        assert_eq!(e.work_fingerprint.levels(), &[2.0, 3.0, 1.0]);
        assert!((e.gplus_score - 60.0).abs() < 1e-12);
        assert_eq!(e.contributing, ["a", "b"]);
    }

    #[test]
    fn filters_failed_mode_and_date() {
        let config = GPlusConfig::default();
        let recs = [
            record("a", &[1.0, 0.0], "2022-01-01", T, true),
            record("b", &[0.0, 5.0], "2022-01-02", T, false),
            record("c", &[0.0, 4.0], "2022-01-03", A, true),
            record("d", &[3.0, 0.0], "2022-03-01", T, true),
        ];
        let e = evaluate_portfolio(&recs, 2, Some(T), None, &config).unwrap();
        assert_eq!(e.contributing, ["a", "d"]);
        let as_of = "2022-02-01".parse().ok();
        let e = evaluate_portfolio(&recs, 2, Some(T), as_of, &config).unwrap();
        assert_eq!(e.contributing, ["a"]);
        let e = evaluate_portfolio(&recs, 2, None, None, &config).unwrap();
        assert_eq!(e.contributing, ["a", "c", "d"]);
    }

    #[test]
    fn dimension_mismatch() {
        let recs = [record("a", &[1.0, 0.0], "2022-01-01", T, true)];
        let err = evaluate_portfolio(&recs, 3, None, None, &GPlusConfig::default()).unwrap_err();
        assert_eq!(err.name(), "DimensionMismatch");
    }

    fn bounds(entries: &[(TaskId, &[f64])]) -> BoundSet<TaskId> {
        BoundSet {
            kind: BoundKind::Task,
            bounds: entries
                .iter()
                .map(|(id, l)| (*id, Fingerprint::new(l.to_vec()).unwrap()))
                .collect(),
            excluded: vec![],
        }
    }

    #[test]
    fn performable_tasks_sorted() {
        let b = bounds(&[(694, &[1.0, 1.0]), (20431, &[0.5, 0.0]), (5, &[3.0, 0.0])]);
        let work = Fingerprint::new(vec![1.0, 1.0]).unwrap();
        let c = GPlusConfig::default();
        assert_eq!(
            count_performable(&work, &b, &c, Execution::Parallel).unwrap(),
            [694, 20431]
        );
        let all =
            count_performable(&Fingerprint::maximal(2), &b, &c, Execution::Sequential).unwrap();
        assert_eq!(all, [5, 694, 20431]);
        let err = count_performable(&Fingerprint::zeros(3), &b, &c, Execution::Sequential);
        assert!(err.is_err());
    }

    #[test]
    fn timeline_collapses_dates() {
        let config = GPlusConfig::pinned(100.0).unwrap();
        let recs = [
            record("a", &[1.0, 0.0], "2022-01-01", T, true),
            record("b", &[0.0, 2.0], "2022-01-01", T, true),
            record("c", &[0.5, 0.0], "2022-02-01", T, true),
            record("d", &[4.0, 4.0], "2022-03-01", A, true),
        ];
        let b = bounds(&[(1, &[1.0, 2.0]), (2, &[0.0, 3.0])]);
        let tl = build_timeline(&recs, 2, Some(T), Some(&b), &config, Execution::Parallel).unwrap();
        assert_eq!(tl.len(), 2);
        assert!((tl[0].gplus_score - 3.0).abs() < 1e-12);
        assert_eq!(tl[0].performable_task_count, 1);
        assert_eq!(tl[1].gplus_score, tl[0].gplus_score);
        assert_eq!(tl[1].date, "2022-02-01".parse::<NaiveDate>().unwrap());
    }

    #[test]
    fn single_record_timeline() {
        let config = GPlusConfig::default();
        let recs = [record("a", &[1.0, 2.0], "2023-05-01", A, true)];
        let tl = build_timeline(&recs, 2, Some(A), None, &config, Execution::Sequential).unwrap();
        assert_eq!(tl.len(), 1);
        assert_eq!(tl[0].gplus_score, gplus(&recs[0].fingerprint, &config));
    }
}
