//! Static SVG rendering of g+ timelines.
//!
//! The x axis is calendar time, linear in days between the earliest and
//! latest date over all series. The left axis is g+ from 0 to a rounded-up
//! maximum; the right axis is the performable-task count.

use std::fmt::Write as _;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::fingerprint::display1;
use crate::ingest::ControlMode;
use crate::portfolio::TimelinePoint;

#[derive(Debug, Clone)]
pub struct TimelineSeries {
    pub mode: ControlMode,
    pub points: Vec<TimelinePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotLayout {
    pub width: f64,
    pub height: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

pub const LAYOUT: PlotLayout = PlotLayout {
    width: 800.0,
    height: 480.0,
    left: 70.0,
    right: 70.0,
    top: 40.0,
    bottom: 60.0,
};

const COUNT_COLOR: &str = "#8c564b";

fn color(mode: ControlMode) -> &'static str {
    match mode {
        ControlMode::AnalogousTeleop => "#1f77b4",
        ControlMode::Autonomous => "#17becf",
    }
}

/// Smallest multiple of `step` at or above `v`, and at least `step`.
fn ceil_to(v: f64, step: f64) -> f64 {
    ((v / step).ceil() * step).max(step)
}

struct Scale {
    first: NaiveDate,
    span_days: f64,
    score_max: f64,
    count_max: f64,
}

impl Scale {
    fn x(&self, date: NaiveDate) -> f64 {
        let w = LAYOUT.width - LAYOUT.left - LAYOUT.right;
        if self.span_days == 0.0 {
            return LAYOUT.left + w / 2.0;
        }
        LAYOUT.left + w * (date - self.first).num_days() as f64 / self.span_days
    }

    fn y(&self, value: f64, max: f64) -> f64 {
        let h = LAYOUT.height - LAYOUT.top - LAYOUT.bottom;
        LAYOUT.top + h * (1.0 - value / max)
    }
}

fn coords(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn draw_series(out: &mut String, class: &str, mode: ControlMode, color: &str, xy: &[(f64, f64)]) {
    let _ = writeln!(out, r#"<g class="{class}" data-mode="{mode}">"#);
    if xy.len() > 1 {
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords(xy)
        );
    }
    for (x, y) in xy {
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
}

/// Render one g+ series per control mode plus, for each, its
/// performable-task count series.
pub fn render_timeline_svg(series: &[TimelineSeries]) -> Result<String> {
    let all: Vec<&TimelinePoint> = series.iter().flat_map(|s| &s.points).collect();
    let (Some(first), Some(last)) = (
        all.iter().map(|p| p.date).min(),
        all.iter().map(|p| p.date).max(),
    ) else {
        return Err(Error::EmptyInput("timeline has no points"));
    };
    let scale = Scale {
        first,
        span_days: (last - first).num_days() as f64,
        score_max: ceil_to(all.iter().map(|p| p.gplus_score).fold(0.0, f64::max), 10.0),
        count_max: ceil_to(
            all.iter()
                .map(|p| p.performable_task_count)
                .max()
                .unwrap_or(0) as f64,
            5.0,
        ),
    };

    let (w, h) = (LAYOUT.width, LAYOUT.height);
    let (x0, x1) = (LAYOUT.left, w - LAYOUT.right);
    let (y0, y1) = (LAYOUT.top, h - LAYOUT.bottom);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">g+ over time</text>"#,
        w / 2.0
    );

    // axes and ticks
    let _ = writeln!(
        out,
        r#"<path d="M{x0},{y0} V{y1} H{x1} V{y0}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let v = scale.score_max * i as f64 / 5.0;
        let y = scale.y(v, scale.score_max);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            display1(v)
        );
        let c = scale.count_max * i as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" fill="{COUNT_COLOR}">{}</text>"#,
            x1 + 6.0,
            y + 4.0,
            c.round()
        );
    }
    let mut dates: Vec<NaiveDate> = all.iter().map(|p| p.date).collect();
    dates.sort();
    dates.dedup();
    let stride = dates.len().div_ceil(6).max(1);
    for d in dates.iter().step_by(stride) {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{d}</text>"#,
            scale.x(*d),
            y1 + 18.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" transform="rotate(-90 18 {:.2})" text-anchor="middle">g+</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" transform="rotate(90 {:.2} {:.2})" text-anchor="middle" fill="{COUNT_COLOR}">performable tasks</text>"#,
        w - 18.0,
        (y0 + y1) / 2.0,
        w - 18.0,
        (y0 + y1) / 2.0
    );

    for s in series {
        let gxy: Vec<(f64, f64)> = s
            .points
            .iter()
            .map(|p| (scale.x(p.date), scale.y(p.gplus_score, scale.score_max)))
            .collect();
        draw_series(&mut out, "gplus", s.mode, color(s.mode), &gxy);
        let cxy: Vec<(f64, f64)> = s
            .points
            .iter()
            .map(|p| {
                (
                    scale.x(p.date),
                    scale.y(p.performable_task_count as f64, scale.count_max),
                )
            })
            .collect();
        draw_series(&mut out, "counts", s.mode, COUNT_COLOR, &cxy);
    }

    for (i, s) in series.iter().enumerate() {
        let y = y0 + 14.0 + 16.0 * i as f64;
        let end = s.points.last().map_or(0.0, |p| p.gplus_score);
        let _ = writeln!(
            out,
            r#"<text class="legend" x="{:.2}" y="{y:.2}" fill="{}">{} (g+ {})</text>"#,
            x0 + 10.0,
            color(s.mode),
            s.mode,
            display1(end)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_timeline_plot(series: &[TimelineSeries], out: &Path) -> Result<()> {
    let svg = render_timeline_svg(series)?;
    std::fs::write(out, svg).map_err(|e| Error::io(out, e))
}
