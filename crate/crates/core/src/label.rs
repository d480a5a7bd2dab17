//! O*NET content-model labels such as `4.A.1.a.1.I14.D02`.
//!
//! A label is a dot-separated path. The base part alternates a number,
//! one uppercase letter, then number / lowercase letter pairs
//! (`4.A.1.a.1`). Inside the generalized work-activity tree (`4.A`), a
//! five-segment general activity may be refined by an intermediate segment
//! (`I` plus two digits) and that again by a detailed segment (`D` plus two
//! digits).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Position of a label in the content-model hierarchy, most general first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LabelLevel {
    TopLevel,
    MajorDivision,
    MidDivision,
    GeneralActivity,
    Intermediate,
    Detailed,
    /// A worker-attribute leaf (skill, ability or knowledge element).
    PrimitiveLeaf,
}

impl LabelLevel {
    /// The level one step more general inside the work-activity tree.
    pub fn more_general(self) -> Option<LabelLevel> {
        match self {
            LabelLevel::TopLevel | LabelLevel::PrimitiveLeaf => None,
            LabelLevel::MajorDivision => Some(LabelLevel::TopLevel),
            LabelLevel::MidDivision => Some(LabelLevel::MajorDivision),
            LabelLevel::GeneralActivity => Some(LabelLevel::MidDivision),
            LabelLevel::Intermediate => Some(LabelLevel::GeneralActivity),
            LabelLevel::Detailed => Some(LabelLevel::Intermediate),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LabelLevel::TopLevel => "top",
            LabelLevel::MajorDivision => "major",
            LabelLevel::MidDivision => "mid",
            LabelLevel::GeneralActivity => "general",
            LabelLevel::Intermediate => "intermediate",
            LabelLevel::Detailed => "detailed",
            LabelLevel::PrimitiveLeaf => "primitive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContentModelLabel {
    raw: String,
    level: LabelLevel,
}

const WORK_ACTIVITY_GENERAL_DEPTH: usize = 5;

impl ContentModelLabel {
    pub fn parse(raw: &str) -> Result<Self> {
        let level = classify(raw).map_err(|reason| Error::MalformedLabel {
            label: raw.to_string(),
            reason,
        })?;
        Ok(ContentModelLabel {
            raw: raw.to_string(),
            level,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.raw
    }

    pub fn level(&self) -> LabelLevel {
        self.level
    }

    pub fn path(&self) -> Vec<&str> {
        self.raw.split('.').collect()
    }

    pub fn depth(&self) -> usize {
        self.raw.split('.').count()
    }

    /// True for labels inside the generalized work-activity tree (`4.A...`).
    pub fn is_work_activity(&self) -> bool {
        is_work_activity_root(&self.path())
    }

    /// The label with its last segment removed, if any remains.
    pub fn parent(&self) -> Option<ContentModelLabel> {
        let cut = self.raw.rfind('.')?;
        Some(
            ContentModelLabel::parse(&self.raw[..cut])
                .expect("prefix of a valid label is a valid label"),
        )
    }
}

fn is_work_activity_root(path: &[&str]) -> bool {
    path.len() >= 2 && path[0] == "4" && path[1] == "A"
}

fn is_number(seg: &str) -> bool {
    (1..=3).contains(&seg.len()) && seg.bytes().all(|b| b.is_ascii_digit())
}

fn is_refinement(seg: &str, prefix: u8) -> bool {
    let b = seg.as_bytes();
    b.len() == 3 && b[0] == prefix && b[1].is_ascii_digit() && b[2].is_ascii_digit()
}

fn classify(raw: &str) -> std::result::Result<LabelLevel, String> {
    if raw.is_empty() {
        return Err("empty label".into());
    }
    if !raw.is_ascii() {
        return Err("label is not ASCII".into());
    }
    let segments: Vec<&str> = raw.split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err("empty segment".into());
    }

    // Base segments are everything before the first I/D refinement.
    let base_len = segments
        .iter()
        .position(|s| {
            let b = s.as_bytes();
            (b[0] == b'I' || b[0] == b'D') && b.len() > 1
        })
        .unwrap_or(segments.len());
    let (base, refinements) = segments.split_at(base_len);
    if base.is_empty() {
        return Err("label must start with a numeric segment".into());
    }
    for (i, seg) in base.iter().enumerate() {
        let ok = match i {
            0 => is_number(seg),
            1 => seg.len() == 1 && seg.as_bytes()[0].is_ascii_uppercase(),
            _ if i % 2 == 0 => is_number(seg),
            _ => seg.len() == 1 && seg.as_bytes()[0].is_ascii_lowercase(),
        };
        if !ok {
            let want = match i {
                0 => "a number",
                1 => "one uppercase letter",
                _ if i % 2 == 0 => "a number",
                _ => "one lowercase letter",
            };
            return Err(format!("segment {} ({seg:?}) must be {want}", i + 1));
        }
    }

    let work_tree = is_work_activity_root(base);
    if work_tree && base.len() > WORK_ACTIVITY_GENERAL_DEPTH {
        return Err("work-activity base path is deeper than a general activity".into());
    }

    match refinements {
        [] => Ok(match (work_tree, base.len()) {
            (_, 1 | 2) => LabelLevel::TopLevel,
            (_, 3) => LabelLevel::MajorDivision,
            (true, 4) => LabelLevel::MidDivision,
            (true, _) => LabelLevel::GeneralActivity,
            (false, _) => LabelLevel::PrimitiveLeaf,
        }),
        [first, rest @ ..] => {
            if !work_tree || base.len() != WORK_ACTIVITY_GENERAL_DEPTH {
                return Err(
                    "I/D segments may only follow a five-segment 4.A general activity".into(),
                );
            }
            if !is_refinement(first, b'I') {
                return Err(format!(
                    "segment {first:?} must be an intermediate segment (I + two digits)"
                ));
            }
            match rest {
                [] => Ok(LabelLevel::Intermediate),
                [d] if is_refinement(d, b'D') => Ok(LabelLevel::Detailed),
                [d] => Err(format!(
                    "segment {d:?} must be a detailed segment (D + two digits)"
                )),
                _ => Err("nothing may follow a detailed segment".into()),
            }
        }
    }
}

impl fmt::Display for ContentModelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

impl FromStr for ContentModelLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ContentModelLabel::parse(s)
    }
}

/// Letter prefix and numeric value of a segment; every valid segment is an
/// optional letter prefix followed by optional digits.
fn segment_key(s: &str) -> (u32, &str) {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    (s[split..].parse().unwrap_or(0), &s[..split])
}

/// Numeric segments compare by value, so `4.A.1.a.2` sorts before `4.A.1.a.10`.
impl Ord for ContentModelLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.raw.split('.');
        let mut b = other.raw.split('.');
        loop {
            match (a.next(), b.next()) {
                (None, None) => return self.raw.cmp(&other.raw),
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => {
                    let (kx, ky) = (segment_key(x), segment_key(y));
                    let ord = kx.1.cmp(ky.1).then(kx.0.cmp(&ky.0));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for ContentModelLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for ContentModelLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.raw)
    }
}

impl<'de> Deserialize<'de> for ContentModelLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        ContentModelLabel::parse(&raw).map_err(serde::de::Error::custom)
    }
}
