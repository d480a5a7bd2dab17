//! Brute-force reference implementations used to check the library.
//!
//! These work on plain `Vec<f64>` and walk the raw dataset tables, so they
//! share no code path with the derivations they check.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use gplus_core::ingest::{Dataset, TaskId};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini")
}

pub fn naive_merge(fps: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; fps[0].len()];
    for (d, slot) in out.iter_mut().enumerate() {
        let mut best = fps[0][d];
        for fp in fps {
            if fp[d] > best {
                best = fp[d];
            }
        }
        *slot = best;
    }
    out
}

pub fn naive_min(fps: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; fps[0].len()];
    for (d, slot) in out.iter_mut().enumerate() {
        let mut best = fps[0][d];
        for fp in fps {
            if fp[d] < best {
                best = fp[d];
            }
        }
        *slot = best;
    }
    out
}

/// Indices where the requirement exceeds the available level by more than `eps`.
pub fn naive_deficits(work: &[f64], subtask: &[f64], eps: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for d in 0..work.len() {
        if subtask[d] > work[d] + eps {
            out.push(d);
        }
    }
    out
}

pub fn naive_sum_gplus(fp: &[f64], norm: f64) -> f64 {
    let mut s = 0.0;
    for v in fp {
        s += v;
    }
    s * 100.0 / norm
}

/// DWA label -> componentwise min over every occupation owning a task
/// mapped to it, found by scanning all occupations and all tasks.
pub fn naive_dwa_bounds(ds: &Dataset) -> BTreeMap<String, Vec<f64>> {
    let mut out = BTreeMap::new();
    for dwa in ds.activities().keys() {
        let mut parents = Vec::new();
        for occ in ds.occupations().values() {
            let mut uses = false;
            for task in ds.tasks().values() {
                if task.occupation_code == occ.soc_code && task.dwa_labels.iter().any(|l| l == dwa)
                {
                    uses = true;
                }
            }
            if uses {
                parents.push(occ.fingerprint.levels().to_vec());
            }
        }
        if !parents.is_empty() {
            out.insert(dwa.to_string(), naive_min(&parents));
        }
    }
    out
}

pub fn naive_task_bounds(
    ds: &Dataset,
    dwa: &BTreeMap<String, Vec<f64>>,
) -> BTreeMap<TaskId, Vec<f64>> {
    let mut out = BTreeMap::new();
    for task in ds.tasks().values() {
        let parents: Vec<Vec<f64>> = task
            .dwa_labels
            .iter()
            .filter_map(|l| dwa.get(l.as_str()).cloned())
            .collect();
        if !parents.is_empty() {
            out.insert(task.task_id, naive_min(&parents));
        }
    }
    out
}

pub fn naive_count(work: &[f64], bounds: &BTreeMap<TaskId, Vec<f64>>, eps: f64) -> Vec<TaskId> {
    let mut out = Vec::new();
    for (id, b) in bounds {
        let mut ok = true;
        for d in 0..work.len() {
            if b[d] > work[d] + eps {
                ok = false;
            }
        }
        if ok {
            out.push(*id);
        }
    }
    out
}
