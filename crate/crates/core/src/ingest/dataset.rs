use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingerprint::{Fingerprint, MAX_LEVEL};
use crate::label::{ContentModelLabel, LabelLevel};

use super::tsv::Table;

/// Primitive counts of the reference O*NET taxonomy.
pub const REFERENCE_COUNTS: [(PrimitiveKind, usize); 3] = [
    (PrimitiveKind::Skill, 33),
    (PrimitiveKind::Ability, 52),
    (PrimitiveKind::Knowledge, 35),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimitiveKind {
    Skill,
    Ability,
    Knowledge,
}

impl FromStr for PrimitiveKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "skill" | "skills" => Ok(PrimitiveKind::Skill),
            "ability" | "abilities" => Ok(PrimitiveKind::Ability),
            "knowledge" => Ok(PrimitiveKind::Knowledge),
            _ => Err(()),
        }
    }
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimitiveKind::Skill => "skill",
            PrimitiveKind::Ability => "ability",
            PrimitiveKind::Knowledge => "knowledge",
        })
    }
}

/// One latent worker dimension. `index` is its position in the canonical
/// ordering: skills, then abilities, then knowledge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorkPrimitive {
    pub element_id: String,
    pub kind: PrimitiveKind,
    pub name: String,
    pub index: usize,
}

/// Standard Occupational Classification code, `NN-NNNN.NN`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SocCode(String);

impl SocCode {
    pub fn parse(raw: &str) -> Option<SocCode> {
        let b = raw.as_bytes();
        let shape_ok = b.len() == 10
            && b[2] == b'-'
            && b[7] == b'.'
            && b.iter()
                .enumerate()
                .all(|(i, c)| i == 2 || i == 7 || c.is_ascii_digit());
        shape_ok.then(|| SocCode(raw.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SocCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type TaskId = u32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Occupation {
    pub soc_code: SocCode,
    pub title: String,
    pub fingerprint: Fingerprint,
    /// Ascending.
    pub task_ids: Vec<TaskId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TaskCategory {
    Core,
    Supplemental,
}

impl FromStr for TaskCategory {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "core" => Ok(TaskCategory::Core),
            "supplemental" => Ok(TaskCategory::Supplemental),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskStatement {
    pub task_id: TaskId,
    pub text: String,
    pub occupation_code: SocCode,
    pub importance: f64,
    pub category: TaskCategory,
    /// Detailed work activities, ascending.
    pub dwa_labels: Vec<ContentModelLabel>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkActivity {
    pub label: ContentModelLabel,
    pub title: String,
    pub level: LabelLevel,
    pub parent_label: Option<ContentModelLabel>,
}

/// Counts per entity kind, as reported after a load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatasetSummary {
    pub primitives: usize,
    pub skills: usize,
    pub abilities: usize,
    pub knowledge: usize,
    pub occupations: usize,
    pub tasks: usize,
    pub activities: usize,
    pub activities_by_level: BTreeMap<String, usize>,
    pub task_dwa_links: usize,
    pub warnings: Vec<String>,
}

/// Validated, cross-linked occupational data. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    primitives: Vec<WorkPrimitive>,
    primitive_index: BTreeMap<String, usize>,
    occupations: BTreeMap<SocCode, Occupation>,
    tasks: BTreeMap<TaskId, TaskStatement>,
    activities: BTreeMap<ContentModelLabel, WorkActivity>,
    dwa_to_occupations: BTreeMap<ContentModelLabel, BTreeSet<SocCode>>,
    warnings: Vec<String>,
}

impl Dataset {
    pub fn dim(&self) -> usize {
        self.primitives.len()
    }

    pub fn primitives(&self) -> &[WorkPrimitive] {
        &self.primitives
    }

    pub fn primitive_by_id(&self, element_id: &str) -> Option<&WorkPrimitive> {
        self.primitive_index
            .get(element_id)
            .map(|&i| &self.primitives[i])
    }

    /// Position of a primitive within its own kind (0-based), e.g. the 40th
    /// ability has local index 39.
    pub fn kind_local_index(&self, index: usize) -> Option<(PrimitiveKind, usize)> {
        let p = self.primitives.get(index)?;
        let first = self.primitives.iter().position(|q| q.kind == p.kind)?;
        Some((p.kind, index - first))
    }

    pub fn occupations(&self) -> &BTreeMap<SocCode, Occupation> {
        &self.occupations
    }

    pub fn occupation(&self, soc: &str) -> Option<&Occupation> {
        SocCode::parse(soc).and_then(|c| self.occupations.get(&c))
    }

    pub fn occupation_by_title(&self, title: &str) -> Option<&Occupation> {
        self.occupations
            .values()
            .find(|o| o.title.eq_ignore_ascii_case(title))
    }

    pub fn tasks(&self) -> &BTreeMap<TaskId, TaskStatement> {
        &self.tasks
    }

    pub fn activities(&self) -> &BTreeMap<ContentModelLabel, WorkActivity> {
        &self.activities
    }

    pub fn detailed_activities(&self) -> impl Iterator<Item = &WorkActivity> {
        self.activities
            .values()
            .filter(|a| a.level == LabelLevel::Detailed)
    }

    pub fn task_to_dwa(&self) -> impl Iterator<Item = (TaskId, &[ContentModelLabel])> {
        self.tasks
            .values()
            .map(|t| (t.task_id, t.dwa_labels.as_slice()))
    }

    /// Occupations owning at least one task mapped to each detailed activity.
    pub fn dwa_to_occupations(&self) -> &BTreeMap<ContentModelLabel, BTreeSet<SocCode>> {
        &self.dwa_to_occupations
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn summary(&self) -> DatasetSummary {
        let count_kind = |k| self.primitives.iter().filter(|p| p.kind == k).count();
        let mut by_level = BTreeMap::new();
        for a in self.activities.values() {
            *by_level.entry(a.level.as_str().to_string()).or_insert(0) += 1;
        }
        DatasetSummary {
            primitives: self.dim(),
            skills: count_kind(PrimitiveKind::Skill),
            abilities: count_kind(PrimitiveKind::Ability),
            knowledge: count_kind(PrimitiveKind::Knowledge),
            occupations: self.occupations.len(),
            tasks: self.tasks.len(),
            activities: self.activities.len(),
            activities_by_level: by_level,
            task_dwa_links: self.tasks.values().map(|t| t.dwa_labels.len()).sum(),
            warnings: self.warnings.clone(),
        }
    }
}

/// Accumulates entities in dependency order (primitives, occupations,
/// ratings, tasks, activities, task-to-activity links) and validates each
/// addition against what is already present.
#[derive(Debug, Default)]
pub struct DatasetBuilder {
    primitives: Vec<(String, PrimitiveKind, String)>,
    primitive_ids: HashMap<String, usize>,
    canonical: Option<Vec<usize>>,
    occupations: BTreeMap<SocCode, (String, Vec<Option<f64>>)>,
    tasks: BTreeMap<TaskId, TaskStatement>,
    activities: BTreeMap<ContentModelLabel, WorkActivity>,
}

impl DatasetBuilder {
    pub fn new() -> Self {
        DatasetBuilder::default()
    }

    pub fn add_primitive(
        &mut self,
        element_id: &str,
        kind: PrimitiveKind,
        name: &str,
    ) -> Result<()> {
        if self.canonical.is_some() {
            return Err(Error::Integrity(
                "primitives must be added before occupations".into(),
            ));
        }
        ContentModelLabel::parse(element_id)?;
        if self.primitive_ids.contains_key(element_id) {
            return Err(Error::Integrity(format!(
                "duplicate primitive element_id {element_id}"
            )));
        }
        self.primitive_ids
            .insert(element_id.to_string(), self.primitives.len());
        self.primitives
            .push((element_id.to_string(), kind, name.to_string()));
        Ok(())
    }

    /// Canonical position of each primitive in insertion order.
    fn canonical(&mut self) -> &[usize] {
        let prims = &self.primitives;
        self.canonical.get_or_insert_with(|| {
            let mut order: Vec<usize> = (0..prims.len()).collect();
            order.sort_by_key(|&i| (prims[i].1, i));
            let mut pos = vec![0; prims.len()];
            for (canon, &i) in order.iter().enumerate() {
                pos[i] = canon;
            }
            pos
        })
    }

    pub fn add_occupation(&mut self, soc: SocCode, title: &str) -> Result<()> {
        let dim = self.canonical().len();
        if self.occupations.contains_key(&soc) {
            return Err(Error::Integrity(format!("duplicate soc_code {soc}")));
        }
        self.occupations
            .insert(soc, (title.to_string(), vec![None; dim]));
        Ok(())
    }

    pub fn add_rating(&mut self, soc: &SocCode, element_id: &str, level: f64) -> Result<()> {
        if !(level.is_finite() && (0.0..=MAX_LEVEL).contains(&level)) {
            return Err(Error::InvalidLevel(format!(
                "level {level} for {soc}/{element_id} is outside [0, {MAX_LEVEL}]"
            )));
        }
        let Some(&raw_index) = self.primitive_ids.get(element_id) else {
            return Err(Error::Integrity(format!(
                "rating references unknown element_id {element_id}"
            )));
        };
        let index = self.canonical()[raw_index];
        let Some((_, levels)) = self.occupations.get_mut(soc) else {
            return Err(Error::Integrity(format!(
                "rating references unknown soc_code {soc}"
            )));
        };
        if levels[index].is_some() {
            return Err(Error::Integrity(format!(
                "duplicate rating for {soc}/{element_id}"
            )));
        }
        levels[index] = Some(level);
        Ok(())
    }

    pub fn add_task(
        &mut self,
        task_id: TaskId,
        soc: SocCode,
        importance: f64,
        category: TaskCategory,
        text: &str,
    ) -> Result<()> {
        if task_id == 0 {
            return Err(Error::Integrity("task_id must be positive".into()));
        }
        if !(0.0..=100.0).contains(&importance) {
            return Err(Error::InvalidLevel(format!(
                "importance {importance} of task {task_id} is outside [0, 100]"
            )));
        }
        if !self.occupations.contains_key(&soc) {
            return Err(Error::Integrity(format!(
                "task {task_id} references unknown soc_code {soc}"
            )));
        }
        if self.tasks.contains_key(&task_id) {
            return Err(Error::Integrity(format!("duplicate task_id {task_id}")));
        }
        self.tasks.insert(
            task_id,
            TaskStatement {
                task_id,
                text: text.to_string(),
                occupation_code: soc,
                importance,
                category,
                dwa_labels: Vec::new(),
            },
        );
        Ok(())
    }

    pub fn add_activity(&mut self, label: ContentModelLabel, title: &str) -> Result<()> {
        if self.activities.contains_key(&label) {
            return Err(Error::Integrity(format!(
                "duplicate activity label {label}"
            )));
        }
        let parent_label = match label.level() {
            LabelLevel::MidDivision
            | LabelLevel::GeneralActivity
            | LabelLevel::Intermediate
            | LabelLevel::Detailed => label.parent(),
            _ => None,
        };
        self.activities.insert(
            label.clone(),
            WorkActivity {
                level: label.level(),
                label,
                title: title.to_string(),
                parent_label,
            },
        );
        Ok(())
    }

    pub fn link_task_dwa(&mut self, task_id: TaskId, dwa: ContentModelLabel) -> Result<()> {
        if dwa.level() != LabelLevel::Detailed {
            return Err(Error::Integrity(format!(
                "task {task_id} maps to {dwa}, which is not a detailed work activity"
            )));
        }
        if !self.activities.contains_key(&dwa) {
            return Err(Error::Integrity(format!(
                "task {task_id} maps to unknown activity {dwa}"
            )));
        }
        let Some(task) = self.tasks.get_mut(&task_id) else {
            return Err(Error::Integrity(format!(
                "task-to-activity link references unknown task_id {task_id}"
            )));
        };
        if task.dwa_labels.contains(&dwa) {
            return Err(Error::Integrity(format!(
                "duplicate link between task {task_id} and {dwa}"
            )));
        }
        task.dwa_labels.push(dwa);
        Ok(())
    }

    pub fn build(mut self) -> Result<Dataset> {
        if self.primitives.is_empty() {
            return Err(Error::Dimension("no work primitives defined".into()));
        }
        let canonical = self.canonical().to_vec();

        let mut primitives: Vec<WorkPrimitive> = self
            .primitives
            .iter()
            .zip(&canonical)
            .map(|((element_id, kind, name), &index)| WorkPrimitive {
                element_id: element_id.clone(),
                kind: *kind,
                name: name.clone(),
                index,
            })
            .collect();
        primitives.sort_by_key(|p| p.index);
        let primitive_index = primitives
            .iter()
            .map(|p| (p.element_id.clone(), p.index))
            .collect();

        let mut warnings = Vec::new();
        for (kind, expected) in REFERENCE_COUNTS {
            let n = primitives.iter().filter(|p| p.kind == kind).count();
            if n != expected {
                let msg =
                    format!("{n} {kind} primitives loaded; the reference taxonomy has {expected}");
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }

        for a in self.activities.values() {
            if let Some(parent) = &a.parent_label {
                if !self.activities.contains_key(parent) {
                    return Err(Error::Integrity(format!(
                        "activity {} has no parent activity {parent}",
                        a.label
                    )));
                }
            }
        }

        let mut task_ids: BTreeMap<SocCode, Vec<TaskId>> = BTreeMap::new();
        let mut dwa_to_occupations: BTreeMap<ContentModelLabel, BTreeSet<SocCode>> =
            BTreeMap::new();
        for task in self.tasks.values_mut() {
            task.dwa_labels.sort();
            task_ids
                .entry(task.occupation_code.clone())
                .or_default()
                .push(task.task_id);
            for dwa in &task.dwa_labels {
                dwa_to_occupations
                    .entry(dwa.clone())
                    .or_default()
                    .insert(task.occupation_code.clone());
            }
        }

        let mut occupations = BTreeMap::new();
        for (soc, (title, levels)) in self.occupations {
            let missing: Vec<&str> = levels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.is_none())
                .map(|(i, _)| primitives[i].element_id.as_str())
                .collect();
            if !missing.is_empty() {
                return Err(Error::Dimension(format!(
                    "occupation {soc} has no level for {} primitive(s), first {}",
                    missing.len(),
                    missing[0]
                )));
            }
            let fingerprint = Fingerprint::new(levels.into_iter().flatten().collect())?;
            occupations.insert(
                soc.clone(),
                Occupation {
                    task_ids: task_ids.remove(&soc).unwrap_or_default(),
                    soc_code: soc,
                    title,
                    fingerprint,
                },
            );
        }

        Ok(Dataset {
            primitives,
            primitive_index,
            occupations,
            tasks: self.tasks,
            activities: self.activities,
            dwa_to_occupations,
            warnings,
        })
    }
}

/// Locations of the dataset files.
#[derive(Debug, Clone)]
pub struct DatasetPaths {
    pub primitives: PathBuf,
    pub occupations: PathBuf,
    pub ratings: PathBuf,
    pub tasks: PathBuf,
    pub task_dwa: PathBuf,
    pub activities: PathBuf,
}

impl DatasetPaths {
    /// The standard file names inside `dir`.
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        let dir = dir.as_ref();
        DatasetPaths {
            primitives: dir.join("primitives.tsv"),
            occupations: dir.join("occupations.tsv"),
            ratings: dir.join("ratings.tsv"),
            tasks: dir.join("tasks.tsv"),
            task_dwa: dir.join("task_dwa.tsv"),
            activities: dir.join("activities.tsv"),
        }
    }
}

fn soc_field(row: &super::tsv::Row<'_>, i: usize) -> Result<SocCode> {
    let raw = row.get(i);
    SocCode::parse(raw)
        .ok_or_else(|| row.error(format!("soc_code {raw:?} is not of the form NN-NNNN.NN")))
}

/// Parse, validate and cross-link the dataset files.
pub fn load_dataset(paths: &DatasetPaths) -> Result<Dataset> {
    let mut b = DatasetBuilder::new();

    let t = Table::read(&paths.primitives, &["element_id", "kind", "name"])?;
    for row in t.rows() {
        let kind: PrimitiveKind = row
            .get(1)
            .parse()
            .map_err(|_| row.error(format!("unknown primitive kind {:?}", row.get(1))))?;
        b.add_primitive(row.get(0), kind, row.get(2))
            .map_err(|e| row.locate(e))?;
    }

    let t = Table::read(&paths.occupations, &["soc_code", "title"])?;
    for row in t.rows() {
        let soc = soc_field(&row, 0)?;
        b.add_occupation(soc, row.get(1))
            .map_err(|e| row.locate(e))?;
    }

    let t = Table::read(&paths.ratings, &["soc_code", "element_id", "level"])?;
    for row in t.rows() {
        let soc = soc_field(&row, 0)?;
        let level: f64 = row.parse(2, "level")?;
        b.add_rating(&soc, row.get(1), level)
            .map_err(|e| row.locate(e))?;
    }

    let t = Table::read(
        &paths.tasks,
        &["task_id", "soc_code", "importance", "category", "text"],
    )?;
    for row in t.rows() {
        let task_id: TaskId = row.parse(0, "task_id")?;
        let soc = soc_field(&row, 1)?;
        let importance: f64 = row.parse(2, "importance")?;
        let category: TaskCategory = row
            .get(3)
            .parse()
            .map_err(|_| row.error(format!("unknown task category {:?}", row.get(3))))?;
        b.add_task(task_id, soc, importance, category, row.get(4))
            .map_err(|e| row.locate(e))?;
    }

    let t = Table::read(&paths.activities, &["label", "title"])?;
    for row in t.rows() {
        let label = ContentModelLabel::parse(row.get(0)).map_err(|e| row.locate(e))?;
        b.add_activity(label, row.get(1))
            .map_err(|e| row.locate(e))?;
    }

    let t = Table::read(&paths.task_dwa, &["task_id", "dwa_label"])?;
    for row in t.rows() {
        let task_id: TaskId = row.parse(0, "task_id")?;
        let label = ContentModelLabel::parse(row.get(1)).map_err(|e| row.locate(e))?;
        b.link_task_dwa(task_id, label).map_err(|e| row.locate(e))?;
    }

    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builder_with_primitives() -> DatasetBuilder {
        let mut b = DatasetBuilder::new();
        b.add_primitive("2.C.1.a", PrimitiveKind::Knowledge, "Administration")
            .unwrap();
        b.add_primitive("1.A.1.a.1", PrimitiveKind::Ability, "Oral Comprehension")
            .unwrap();
        b.add_primitive("2.A.1.a", PrimitiveKind::Skill, "Reading Comprehension")
            .unwrap();
        b
    }

    fn soc(s: &str) -> SocCode {
        SocCode::parse(s).unwrap()
    }

    #[test]
    fn soc_code_shape() {
        assert!(SocCode::parse("41-2031.00").is_some());
        for bad in [
            "41-2031",
            "412031.00",
            "41-2031.0a",
            "41_2031.00",
            "41-2031.000",
        ] {
            assert!(SocCode::parse(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn canonical_order_is_skills_abilities_knowledge() {
        let mut b = builder_with_primitives();
        b.add_occupation(soc("11-1011.00"), "Chief Executives")
            .unwrap();
        // ratings use element ids; the fingerprint comes out in canonical order
        b.add_rating(&soc("11-1011.00"), "2.C.1.a", 3.0).unwrap();
        b.add_rating(&soc("11-1011.00"), "1.A.1.a.1", 2.0).unwrap();
        b.add_rating(&soc("11-1011.00"), "2.A.1.a", 1.0).unwrap();
        let ds = b.build().unwrap();
        let ids: Vec<_> = ds
            .primitives()
            .iter()
            .map(|p| p.element_id.as_str())
            .collect();
        assert_eq!(ids, ["2.A.1.a", "1.A.1.a.1", "2.C.1.a"]);
        let idx: Vec<_> = ds.primitives().iter().map(|p| p.index).collect();
        assert_eq!(idx, [0, 1, 2]);
        assert_eq!(
            ds.occupation("11-1011.00").unwrap().fingerprint.levels(),
            &[1.0, 2.0, 3.0]
        );
        assert_eq!(ds.kind_local_index(2), Some((PrimitiveKind::Knowledge, 0)));
        assert_eq!(ds.warnings().len(), 3);
    }

    #[test]
    fn duplicate_rating_is_integrity_error() {
        let mut b = builder_with_primitives();
        b.add_occupation(soc("11-1011.00"), "Chief Executives")
            .unwrap();
        b.add_rating(&soc("11-1011.00"), "2.C.1.a", 3.0).unwrap();
        let err = b
            .add_rating(&soc("11-1011.00"), "2.C.1.a", 3.0)
            .unwrap_err();
        assert_eq!(err.name(), "IntegrityError");
    }

    #[test]
    fn missing_rating_is_dimension_error() {
        let mut b = builder_with_primitives();
        b.add_occupation(soc("11-1011.00"), "Chief Executives")
            .unwrap();
        b.add_rating(&soc("11-1011.00"), "2.C.1.a", 3.0).unwrap();
        let err = b.build().unwrap_err();
        assert_eq!(err.name(), "DimensionError");
        assert!(err.to_string().contains("11-1011.00"));
    }

    #[test]
    fn unknown_references_are_integrity_errors() {
        let mut b = builder_with_primitives();
        b.add_occupation(soc("11-1011.00"), "Chief Executives")
            .unwrap();
        let err = b
            .add_rating(&soc("99-9999.00"), "2.C.1.a", 1.0)
            .unwrap_err();
        assert!(err.to_string().contains("99-9999.00"));
        let err = b.add_rating(&soc("11-1011.00"), "9.Z.9", 1.0).unwrap_err();
        assert_eq!(err.name(), "IntegrityError");
        let err = b
            .add_task(5, soc("99-9999.00"), 50.0, TaskCategory::Core, "x")
            .unwrap_err();
        assert!(err.to_string().contains("99-9999.00"));
        let dwa = ContentModelLabel::parse("4.A.1.a.1.I01.D01").unwrap();
        let err = b.link_task_dwa(5, dwa).unwrap_err();
        assert_eq!(err.name(), "IntegrityError");
    }

    #[test]
    fn activity_needs_parent() {
        let mut b = builder_with_primitives();
        b.add_activity(ContentModelLabel::parse("4.A.1.a.1.I01.D01").unwrap(), "x")
            .unwrap();
        let err = b.build().unwrap_err();
        assert_eq!(err.name(), "IntegrityError");
        assert!(err.to_string().contains("4.A.1.a.1.I01"));
    }

    #[test]
    fn task_rules() {
        let mut b = builder_with_primitives();
        b.add_occupation(soc("11-1011.00"), "Chief Executives")
            .unwrap();
        assert!(b
            .add_task(0, soc("11-1011.00"), 50.0, TaskCategory::Core, "x")
            .is_err());
        assert!(b
            .add_task(1, soc("11-1011.00"), 100.5, TaskCategory::Core, "x")
            .is_err());
        b.add_task(23_955, soc("11-1011.00"), 100.0, TaskCategory::Core, "x")
            .unwrap();
        assert!(b
            .add_task(23_955, soc("11-1011.00"), 10.0, TaskCategory::Core, "y")
            .is_err());
    }
}
