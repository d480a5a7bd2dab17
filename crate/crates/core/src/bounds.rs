//! Upper-bound fingerprints for detailed work activities and tasks, and
//! distribution statistics over fingerprint collections.
//!
//! A detailed work activity cannot require more of any primitive than any
//! occupation that performs it, so its bound is the componentwise min over
//! those occupations. A task's bound is the componentwise min over the
//! bounds of its detailed work activities.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fingerprint::{gplus, meet_all, Fingerprint, GPlusConfig};
use crate::ingest::{Dataset, TaskId};
use crate::label::ContentModelLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Dwa,
    Task,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSet<K: Ord> {
    pub kind: BoundKind,
    pub bounds: BTreeMap<K, Fingerprint>,
    /// Keys with nothing to bound them, ascending.
    pub excluded: Vec<K>,
}

impl<K: Ord> BoundSet<K> {
    pub fn get(&self, key: &K) -> Option<&Fingerprint> {
        self.bounds.get(key)
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }
}

fn split<K: Ord>(kind: BoundKind, derived: Vec<(K, Option<Fingerprint>)>) -> BoundSet<K> {
    let mut bounds = BTreeMap::new();
    let mut excluded = Vec::new();
    for (key, fp) in derived {
        match fp {
            Some(fp) => {
                bounds.insert(key, fp);
            }
            None => excluded.push(key),
        }
    }
    excluded.sort();
    BoundSet {
        kind,
        bounds,
        excluded,
    }
}

/// Bound every detailed work activity by the occupations owning at least one
/// task mapped to it.
pub fn derive_dwa_bounds(dataset: &Dataset, exec: Execution) -> BoundSet<ContentModelLabel> {
    let labels: Vec<&ContentModelLabel> = dataset.detailed_activities().map(|a| &a.label).collect();
    let derived = exec.map(&labels, |&label| {
        let fp = dataset.dwa_to_occupations().get(label).and_then(|socs| {
            meet_all(socs.iter().map(|s| &dataset.occupations()[s].fingerprint)).ok()
        });
        (label.clone(), fp)
    });
    split(BoundKind::Dwa, derived)
}

/// Bound every task by the bounds of its detailed work activities. Tasks
/// whose activities are all excluded (or that have none) are excluded.
pub fn derive_task_bounds(
    dataset: &Dataset,
    dwa_bounds: &BoundSet<ContentModelLabel>,
    exec: Execution,
) -> BoundSet<TaskId> {
    let tasks: Vec<_> = dataset.tasks().values().collect();
    let derived = exec.map(&tasks, |task| {
        let fp = meet_all(task.dwa_labels.iter().filter_map(|l| dwa_bounds.get(l))).ok();
        (task.task_id, fp)
    });
    split(BoundKind::Task, derived)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionStats<K> {
    pub count: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub min_key: K,
    pub min_score: f64,
    pub max_key: K,
    pub max_score: f64,
}

/// g+ distribution over a keyed fingerprint collection. Ties for min and
/// max go to the smallest key.
pub fn stats<'a, K>(
    fps: impl IntoIterator<Item = (K, &'a Fingerprint)>,
    config: &GPlusConfig,
    exec: Execution,
) -> Result<DistributionStats<K>>
where
    K: Ord + Clone + Send + Sync + Display,
{
    let mut entries: Vec<(K, &Fingerprint)> = fps.into_iter().collect();
    if entries.is_empty() {
        return Err(Error::EmptyInput("no fingerprints to summarize"));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let scores = exec.map(&entries, |(_, fp)| gplus(fp, config));

    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;

    let (mut lo, mut hi) = (0, 0);
    for (i, &s) in scores.iter().enumerate() {
        if s < scores[lo] {
            lo = i;
        }
        if s > scores[hi] {
            hi = i;
        }
    }
    Ok(DistributionStats {
        count: scores.len(),
        mean,
        std: var.sqrt(),
        min_key: entries[lo].0.clone(),
        min_score: scores[lo],
        max_key: entries[hi].0.clone(),
        max_score: scores[hi],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_stats() {
        let fp = Fingerprint::filled(4, 2.0).unwrap();
        let s = stats(
            [("only".to_string(), &fp)],
            &GPlusConfig::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(s.count, 1);
        assert_eq!(s.std, 0.0);
        assert_eq!(s.min_key, s.max_key);
        assert_eq!(s.min_score, s.max_score);
        assert_eq!(s.mean, s.min_score);
    }

    #[test]
    fn ties_go_to_smallest_key() {
        let a = Fingerprint::filled(2, 1.0).unwrap();
        let b = Fingerprint::filled(2, 1.0).unwrap();
        let s = stats(
            [(2u32, &a), (1u32, &b)],
            &GPlusConfig::default(),
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!((s.min_key, s.max_key), (1, 1));
    }

    #[test]
    fn population_std() {
        let config = GPlusConfig::pinned(100.0).unwrap();
        let lo = Fingerprint::filled(10, 1.0).unwrap(); // g+ 10
        let hi = Fingerprint::filled(10, 3.0).unwrap(); // g+ 30
        let s = stats([("a", &lo), ("b", &hi)], &config, Execution::Sequential).unwrap();
        assert!((s.mean - 20.0).abs() < 1e-12);
        assert!((s.std - 10.0).abs() < 1e-12);
        assert_eq!((s.min_key, s.max_key), ("a", "b"));
    }

    #[test]
    fn empty_stats() {
        let none: Vec<(u32, &Fingerprint)> = vec![];
        let err = stats(none, &GPlusConfig::default(), Execution::Sequential).unwrap_err();
        assert_eq!(err.name(), "EmptyInput");
    }
}
