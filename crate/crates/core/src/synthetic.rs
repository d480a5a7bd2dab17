//! Seeded random datasets and ledgers for tests and benchmarks.

use chrono::{Days, NaiveDate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fingerprint::{Fingerprint, MAX_LEVEL};
use crate::ingest::{
    ControlMode, Dataset, DatasetBuilder, PrimitiveKind, SocCode, SubtaskRecord, TaskCategory,
    TaskId, TypeTag,
};
use crate::label::ContentModelLabel;

#[derive(Debug, Clone, Copy)]
pub struct SyntheticSpec {
    pub skills: usize,
    pub abilities: usize,
    pub knowledge: usize,
    pub occupations: usize,
    pub tasks: usize,
    pub dwas: usize,
    /// Largest number of activities linked to one task.
    pub max_dwas_per_task: usize,
    /// Levels are drawn from `k * 7 / level_steps`; small values force ties.
    pub level_steps: u32,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Reference-sized primitive set with a small economy.
    pub fn small(seed: u64) -> Self {
        SyntheticSpec {
            skills: 33,
            abilities: 52,
            knowledge: 35,
            occupations: 10,
            tasks: 50,
            dwas: 20,
            max_dwas_per_task: 3,
            level_steps: 14,
            seed,
        }
    }

    pub fn dim(&self) -> usize {
        self.skills + self.abilities + self.knowledge
    }
}

fn letter(i: usize) -> char {
    (b'a' + (i % 26) as u8) as char
}

fn element_id(kind: PrimitiveKind, i: usize) -> String {
    let group = i / 26 + 1;
    match kind {
        PrimitiveKind::Skill => format!("2.A.{group}.{}", letter(i)),
        PrimitiveKind::Ability => format!("1.A.{group}.{}.1", letter(i)),
        PrimitiveKind::Knowledge => format!("2.C.{group}.{}", letter(i)),
    }
}

pub fn soc_code(i: usize) -> SocCode {
    SocCode::parse(&format!("{:02}-{:04}.00", 11 + i / 10_000, i % 10_000))
        .expect("generated code has the right shape")
}

/// Label of the `i`th synthetic detailed work activity (20 per intermediate).
pub fn dwa_label(i: usize) -> ContentModelLabel {
    let iwa = i / 20 + 1;
    let general = (iwa - 1) / 99 + 1;
    let iwa = (iwa - 1) % 99 + 1;
    ContentModelLabel::parse(&format!("4.A.1.a.{general}.I{iwa:02}.D{:02}", i % 20 + 1))
        .expect("generated label is well formed")
}

pub fn random_fingerprint(rng: &mut impl Rng, dim: usize, steps: u32) -> Fingerprint {
    let levels = (0..dim)
        .map(|_| rng.gen_range(0..=steps) as f64 * MAX_LEVEL / steps as f64)
        .collect();
    Fingerprint::new(levels).expect("levels drawn inside the scale")
}

pub fn generate(spec: &SyntheticSpec) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = DatasetBuilder::new();

    // insert kinds out of canonical order to exercise the reordering
    let mut ids = Vec::new();
    for (kind, n) in [
        (PrimitiveKind::Knowledge, spec.knowledge),
        (PrimitiveKind::Skill, spec.skills),
        (PrimitiveKind::Ability, spec.abilities),
    ] {
        for i in 0..n {
            let id = element_id(kind, i);
            b.add_primitive(&id, kind, &format!("{kind} {i}"))?;
            ids.push(id);
        }
    }

    let socs: Vec<SocCode> = (0..spec.occupations).map(soc_code).collect();
    for (i, soc) in socs.iter().enumerate() {
        b.add_occupation(soc.clone(), &format!("Occupation {i}"))?;
        let fp = random_fingerprint(&mut rng, ids.len(), spec.level_steps);
        for (id, &level) in ids.iter().zip(fp.levels()) {
            b.add_rating(soc, id, level)?;
        }
    }

    // sparse ids, like O*NET's
    let mut task_ids = Vec::with_capacity(spec.tasks);
    let mut next: TaskId = 1;
    for _ in 0..spec.tasks {
        next += rng.gen_range(1..4);
        task_ids.push(next);
    }
    for &id in &task_ids {
        let soc = socs
            .choose(&mut rng)
            .expect("at least one occupation")
            .clone();
        let category = if rng.gen_bool(0.7) {
            TaskCategory::Core
        } else {
            TaskCategory::Supplemental
        };
        b.add_task(
            id,
            soc,
            rng.gen_range(0..=100) as f64,
            category,
            &format!("Task {id}"),
        )?;
    }

    let dwas: Vec<ContentModelLabel> = (0..spec.dwas).map(dwa_label).collect();
    let mut parents = std::collections::BTreeSet::new();
    for d in &dwas {
        let mut p = d.parent();
        while let Some(l) = p {
            p = l.parent();
            parents.insert(l);
        }
    }
    for l in parents.into_iter().filter(|l| l.depth() >= 3) {
        b.add_activity(l.clone(), &format!("Activity {l}"))?;
    }
    for d in &dwas {
        b.add_activity(d.clone(), &format!("Detailed {d}"))?;
    }

    if !dwas.is_empty() {
        for &id in &task_ids {
            let k = rng.gen_range(1..=spec.max_dwas_per_task.max(1));
            for d in dwas.choose_multiple(&mut rng, k) {
                b.link_task_dwa(id, d.clone())?;
            }
        }
    }
    b.build()
}

/// A ledger of `n` records with mostly-zero fingerprints, spread over
/// `months` months from 2022-01-01.
pub fn ledger(dataset: &Dataset, n: usize, months: u32, seed: u64) -> Vec<SubtaskRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = NaiveDate::from_ymd_opt(2022, 1, 1).expect("valid date");
    let tags = ["TRL-1", "EOY-22", "LLM-1", "UAT"];
    let mut out: Vec<SubtaskRecord> = (0..n)
        .map(|i| {
            let levels = (0..dataset.dim())
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        rng.gen_range(1..=14) as f64 * 0.5
                    } else {
                        0.0
                    }
                })
                .collect();
            let day = rng.gen_range(0..(months as u64 * 30).max(1));
            SubtaskRecord {
                subtask_id: format!("S{i:04}"),
                description: format!("Subtask {i}"),
                fingerprint: Fingerprint::new(levels).expect("levels inside the scale"),
                type_tag: TypeTag::parse(tags[rng.gen_range(0..tags.len())]),
                first_success_date: start + Days::new(day),
                control_mode: if rng.gen_bool(0.6) {
                    ControlMode::AnalogousTeleop
                } else {
                    ControlMode::Autonomous
                },
                succeeded: rng.gen_bool(0.9),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.first_success_date
            .cmp(&b.first_success_date)
            .then_with(|| a.subtask_id.cmp(&b.subtask_id))
    });
    out
}
