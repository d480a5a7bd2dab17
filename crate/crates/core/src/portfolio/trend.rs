use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};

use super::TimelinePoint;

/// Mean Gregorian month length in days.
pub const DAYS_PER_MONTH: f64 = 30.4375;

pub fn months_between(from: NaiveDate, to: NaiveDate) -> f64 {
    (to - from).num_days() as f64 / DAYS_PER_MONTH
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Ordinary least-squares line through `(x, y)` points.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len() as f64;
    if points.is_empty() {
        return Err(Error::InsufficientData("no points to fit".into()));
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "need at least two distinct dates for a trend".into(),
        ));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: mean_y - slope * mean_x,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendForecast {
    /// g+ per month.
    pub slope: f64,
    /// Fitted g+ at the first timeline point.
    pub intercept: f64,
    /// g+ of the last timeline point.
    pub current_score: f64,
    pub saturation_target: f64,
    /// Months from the last point until the trend reaches the target;
    /// absent unless the trend is rising.
    pub months_to_saturation: Option<f64>,
}

/// Fit g+ against months since the first point and extrapolate to `target`.
pub fn forecast(timeline: &[TimelinePoint], target: f64) -> Result<TrendForecast> {
    let (first, last) = match (timeline.first(), timeline.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::InsufficientData("empty timeline".into())),
    };
    let points: Vec<(f64, f64)> = timeline
        .iter()
        .map(|p| (months_between(first.date, p.date), p.gplus_score))
        .collect();
    let fit = fit_line(&points)?;
    let current_score = last.gplus_score;
    let months_to_saturation =
        (fit.slope > 0.0).then(|| ((target - current_score) / fit.slope).max(0.0));
    Ok(TrendForecast {
        slope: fit.slope,
        intercept: fit.intercept,
        current_score,
        saturation_target: target,
        months_to_saturation,
    })
}
