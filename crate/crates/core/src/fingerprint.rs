//! The fingerprint algebra: level vectors over the work primitives,
//! componentwise max/min, dominance with shortfall reporting, and the g+
//! scalar.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest level on the O*NET rating scale.
pub const MAX_LEVEL: f64 = 7.0;

/// Mean level-sum over the full O*NET occupation set, as published.
pub const PUBLISHED_NORM_CONSTANT: f64 = 267.3;

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// A vector of primitive levels in `[0, 7]`.
///
/// The same type holds a subtask fingerprint (minimum requirements) and a
/// work fingerprint (demonstrated capability).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Fingerprint {
    levels: Vec<f64>,
}

impl Fingerprint {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = levels
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && (0.0..=MAX_LEVEL).contains(*v)))
        {
            return Err(Error::InvalidLevel(format!(
                "level {v} at index {i} is outside [0, {MAX_LEVEL}]"
            )));
        }
        Ok(Fingerprint { levels })
    }

    pub fn zeros(dim: usize) -> Self {
        Fingerprint {
            levels: vec![0.0; dim],
        }
    }

    pub fn filled(dim: usize, level: f64) -> Result<Self> {
        Fingerprint::new(vec![level; dim])
    }

    /// The fingerprint at the top of every scale.
    pub fn maximal(dim: usize) -> Self {
        Fingerprint {
            levels: vec![MAX_LEVEL; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level(&self, index: usize) -> f64 {
        self.levels[index]
    }

    pub fn sum(&self) -> f64 {
        self.levels.iter().sum()
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    /// Componentwise maximum with `other`.
    pub fn join(&self, other: &Fingerprint) -> Result<Fingerprint> {
        other.check_dim(self.dim())?;
        Ok(self.zip_with(other, f64::max))
    }

    /// Componentwise minimum with `other`.
    pub fn meet(&self, other: &Fingerprint) -> Result<Fingerprint> {
        other.check_dim(self.dim())?;
        Ok(self.zip_with(other, f64::min))
    }

    /// True when every level of `self` is at most the same level of `other`.
    pub fn dominated_by(&self, other: &Fingerprint) -> bool {
        self.dim() == other.dim() && self.levels.iter().zip(&other.levels).all(|(a, b)| a <= b)
    }

    fn zip_with(&self, other: &Fingerprint, f: impl Fn(f64, f64) -> f64) -> Fingerprint {
        Fingerprint {
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl<'de> Deserialize<'de> for Fingerprint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let levels = Vec::<f64>::deserialize(d)?;
        Fingerprint::new(levels).map_err(serde::de::Error::custom)
    }
}

fn fold_componentwise<'a>(
    fps: impl IntoIterator<Item = &'a Fingerprint>,
    f: fn(&Fingerprint, &Fingerprint) -> Result<Fingerprint>,
) -> Result<Fingerprint> {
    let mut iter = fps.into_iter();
    let first = iter
        .next()
        .ok_or(Error::EmptyInput("no fingerprints to combine"))?;
    iter.try_fold(first.clone(), |acc, fp| f(&acc, fp))
}

/// Componentwise maximum over a nonempty collection: the work fingerprint
/// implied by successfully performing every input subtask.
pub fn merge<'a>(fps: impl IntoIterator<Item = &'a Fingerprint>) -> Result<Fingerprint> {
    fold_componentwise(fps, Fingerprint::join)
}

/// Componentwise minimum over a nonempty collection: an upper bound on the
/// requirements of anything every input requires.
pub fn meet_all<'a>(fps: impl IntoIterator<Item = &'a Fingerprint>) -> Result<Fingerprint> {
    fold_componentwise(fps, Fingerprint::meet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    /// Use `norm_constant` as given.
    Pinned,
    /// Replace `norm_constant` with the mean occupation level-sum of the
    /// loaded dataset.
    DerivedFromOccupations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// A requirement is met when it does not exceed the available level.
    MeetsMinimum,
    /// A requirement is met only when it is strictly below the available level.
    StrictlyGreater,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GPlusConfig {
    pub norm_constant: f64,
    pub norm_mode: NormMode,
    pub comparison: Comparison,
    pub epsilon: f64,
}

impl Default for GPlusConfig {
    fn default() -> Self {
        GPlusConfig {
            norm_constant: PUBLISHED_NORM_CONSTANT,
            norm_mode: NormMode::Pinned,
            comparison: Comparison::MeetsMinimum,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl GPlusConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.norm_constant.is_finite() && self.norm_constant > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "norm_constant must be positive, got {}",
                self.norm_constant
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be nonnegative, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn pinned(norm_constant: f64) -> Result<Self> {
        let config = GPlusConfig {
            norm_constant,
            ..GPlusConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    /// Resolve `DerivedFromOccupations` against a set of occupation
    /// fingerprints. Pinned configs are returned unchanged.
    pub fn resolve<'a>(
        &self,
        occupation_fps: impl IntoIterator<Item = &'a Fingerprint>,
    ) -> Result<Self> {
        let mut out = *self;
        if self.norm_mode == NormMode::DerivedFromOccupations {
            out.norm_constant = derive_norm_constant(occupation_fps)?;
        }
        out.validate()?;
        Ok(out)
    }
}

/// Sum of levels scaled so that a level-sum equal to the norm constant
/// scores 100.
pub fn gplus(fp: &Fingerprint, config: &GPlusConfig) -> f64 {
    fp.sum() * 100.0 / config.norm_constant
}

/// Mean level-sum over a nonempty set of occupation fingerprints.
pub fn derive_norm_constant<'a>(
    occupation_fps: impl IntoIterator<Item = &'a Fingerprint>,
) -> Result<f64> {
    let (total, n) = occupation_fps
        .into_iter()
        .fold((0.0, 0usize), |(t, n), fp| (t + fp.sum(), n + 1));
    if n == 0 {
        return Err(Error::EmptyInput("no occupation fingerprints"));
    }
    Ok(total / n as f64)
}

/// Round half up to one decimal place, for display only.
///
/// Decimal halves such as 44.65 are not exact in binary, so a small slack
/// is added before flooring.
pub fn round1(value: f64) -> f64 {
    (value * 10.0 + 0.5 + 1e-9).floor() / 10.0
}

pub fn display1(value: f64) -> String {
    let r = round1(value);
    // avoid "-0.0"
    format!("{:.1}", if r == 0.0 { 0.0 } else { r })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deficit {
    pub index: usize,
    pub required: f64,
    pub available: f64,
    pub deficit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShortfallReport {
    pub performable: bool,
    /// Unmet dimensions in ascending index order.
    pub deficits: Vec<Deficit>,
}

fn requirement_met(required: f64, available: f64, config: &GPlusConfig) -> bool {
    match config.comparison {
        Comparison::MeetsMinimum => required <= available + config.epsilon,
        Comparison::StrictlyGreater => required + config.epsilon < available,
    }
}

/// Check whether a subtask with fingerprint `subtask` can be performed by a
/// worker with fingerprint `work`, listing every unmet dimension.
pub fn performable(
    work: &Fingerprint,
    subtask: &Fingerprint,
    config: &GPlusConfig,
) -> Result<ShortfallReport> {
    subtask.check_dim(work.dim())?;
    let deficits: Vec<Deficit> = subtask
        .levels()
        .iter()
        .zip(work.levels())
        .enumerate()
        .filter(|(_, (&req, &avail))| !requirement_met(req, avail, config))
        .map(|(index, (&required, &available))| Deficit {
            index,
            required,
            available,
            deficit: required - available,
        })
        .collect();
    Ok(ShortfallReport {
        performable: deficits.is_empty(),
        deficits,
    })
}

/// Like [`performable`] without building the deficit list.
pub fn is_performable(work: &Fingerprint, subtask: &Fingerprint, config: &GPlusConfig) -> bool {
    work.dim() == subtask.dim()
        && subtask
            .levels()
            .iter()
            .zip(work.levels())
            .all(|(&req, &avail)| requirement_met(req, avail, config))
}
