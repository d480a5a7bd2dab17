use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use gplus_core::bounds::{
    derive_dwa_bounds, derive_task_bounds, stats, BoundSet, DistributionStats,
};
use gplus_core::ingest::{
    load_dataset, load_subtask_ledger, ControlMode, Dataset, DatasetPaths, SubtaskRecord, TaskId,
};
use gplus_core::portfolio::{build_timeline, count_performable, evaluate_portfolio, forecast};
use gplus_core::report::{
    fingerprint_entries, render_timeline_svg, CsvTable, ReportBundle, Score, TimelineSeries,
};
use gplus_core::{
    gplus, merge, performable, ContentModelLabel, Error, Execution, Fingerprint, GPlusConfig,
};

use crate::{BoundKindArg, Cli, Command, Failure, FormatArg, Population};

/// Maps a population key back to a human-readable title.
type TitleLookup<'a> = Box<dyn Fn(&str) -> String + 'a>;

struct Session<'a> {
    cli: &'a Cli,
    dataset: Dataset,
    config: GPlusConfig,
    exec: Execution,
}

pub(crate) fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let c = &cli.common;
    if c.format == FormatArg::Csv
        && !matches!(
            cli.command,
            Command::Bounds { .. } | Command::Stats { .. } | Command::Timeline
        )
    {
        return Err(Failure::Usage(
            "--format csv is only available for bounds, stats and timeline".into(),
        ));
    }
    if matches!(cli.command, Command::Plot) && c.out.is_none() {
        return Err(Failure::Usage(
            "plot needs --out PATH for the SVG file".into(),
        ));
    }
    let data = c
        .data
        .as_ref()
        .ok_or_else(|| Failure::Usage("--data DIR (or GPLUS_DATA_DIR) is required".into()))?;
    let config = crate::config::assemble(c.config.as_deref(), c.norm, c.comparison)?;
    let dataset = load_dataset(&DatasetPaths::in_dir(data))?;
    let config = config.resolve(dataset.occupations().values().map(|o| &o.fingerprint))?;
    let s = Session {
        cli,
        dataset,
        config,
        exec: Execution::default(),
    };

    let (name, payload, table) = match &cli.command {
        Command::Validate => ("validate", s.validate()?, None),
        Command::Fingerprint { occupations } => ("fingerprint", s.fingerprint(occupations)?, None),
        Command::Gplus { occupations } => ("gplus", s.gplus(occupations)?, None),
        Command::Evaluate => ("evaluate", s.evaluate()?, None),
        Command::Performable {
            occupations,
            against,
        } => (
            "performable",
            s.performable(occupations, against.as_deref())?,
            None,
        ),
        Command::Bounds { kind } => {
            let (p, t) = s.bounds(*kind)?;
            ("bounds", p, Some(t))
        }
        Command::Stats { of } => {
            let (p, t) = s.stats(*of)?;
            ("stats", p, Some(t))
        }
        Command::Timeline => {
            let (p, t) = s.timeline()?;
            ("timeline", p, Some(t))
        }
        Command::Forecast { target } => ("forecast", s.forecast(*target)?, None),
        Command::Plot => ("plot", s.plot()?, None),
    };

    let timestamp = (!c.no_timestamp)
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let bundle = ReportBundle::new(name, s.config, payload)?.with_timestamp(timestamp);
    let text = match (c.format, table) {
        (FormatArg::Csv, Some(t)) => bundle.to_csv(&t)?,
        _ => bundle.to_json(),
    };
    match (&c.out, &cli.command) {
        (Some(path), cmd) if !matches!(cmd, Command::Plot) => write_file(path, &text),
        _ => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(format!("cannot write output: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display())))
}

fn unknown(what: &str, key: &str) -> Failure {
    Error::Integrity(format!("unknown {what} {key}")).into()
}

impl Session<'_> {
    fn records(&self, command: &str) -> Result<Vec<SubtaskRecord>, Failure> {
        let path = self
            .cli
            .common
            .ledger
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("{command} needs --ledger FILE")))?;
        Ok(load_subtask_ledger(path, &self.dataset)?)
    }

    /// The requested mode, or both.
    fn modes(&self) -> Vec<ControlMode> {
        match self.cli.common.mode {
            Some(m) => vec![m],
            None => ControlMode::ALL.to_vec(),
        }
    }

    fn occupation_fps(&self, socs: &[String]) -> Result<Vec<&Fingerprint>, Failure> {
        socs.iter()
            .map(|s| {
                self.dataset
                    .occupation(s)
                    .map(|o| &o.fingerprint)
                    .ok_or_else(|| unknown("occupation", s))
            })
            .collect()
    }

    fn levels(&self, fp: &Fingerprint) -> Result<Value, Failure> {
        Ok(
            serde_json::to_value(fingerprint_entries(&self.dataset, fp)?)
                .expect("level entries serialize"),
        )
    }

    fn task_bounds(&self) -> BoundSet<TaskId> {
        let dwa = derive_dwa_bounds(&self.dataset, self.exec);
        derive_task_bounds(&self.dataset, &dwa, self.exec)
    }

    fn validate(&self) -> Result<Value, Failure> {
        let mut payload = json!({ "dataset": self.dataset.summary() });
        if self.cli.common.ledger.is_some() {
            let recs = self.records("validate")?;
            let mut by_mode = BTreeMap::new();
            for m in ControlMode::ALL {
                let n = recs.iter().filter(|r| r.control_mode == m).count();
                by_mode.insert(m.as_str(), n);
            }
            payload["ledger"] = json!({
                "records": recs.len(),
                "succeeded": recs.iter().filter(|r| r.succeeded).count(),
                "by_mode": by_mode,
            });
        }
        Ok(payload)
    }

    fn fingerprint(&self, socs: &[String]) -> Result<Value, Failure> {
        if !socs.is_empty() {
            let fps = self.occupation_fps(socs)?;
            let merged = merge(fps.iter().copied())?;
            return Ok(json!({
                "occupations": socs,
                "gplus": Score::new(gplus(&merged, &self.config)),
                "levels": self.levels(&merged)?,
            }));
        }
        if self.cli.common.ledger.is_none() {
            return Err(Failure::Usage(
                "fingerprint needs --occupation SOC or --ledger FILE".into(),
            ));
        }
        let recs = self.records("fingerprint")?;
        let mut portfolios = Vec::new();
        for mode in self.modes() {
            let e = evaluate_portfolio(
                &recs,
                self.dataset.dim(),
                Some(mode),
                self.cli.common.as_of,
                &self.config,
            )?;
            portfolios.push(json!({
                "mode": mode,
                "gplus": Score::new(e.gplus_score),
                "levels": self.levels(&e.work_fingerprint)?,
            }));
        }
        Ok(json!({ "as_of": self.cli.common.as_of, "portfolios": portfolios }))
    }

    fn gplus(&self, socs: &[String]) -> Result<Value, Failure> {
        let mut scores = Vec::new();
        for soc in socs {
            let occ = self
                .dataset
                .occupation(soc)
                .ok_or_else(|| unknown("occupation", soc))?;
            scores.push(json!({
                "soc_code": occ.soc_code,
                "title": occ.title,
                "gplus": Score::new(gplus(&occ.fingerprint, &self.config)),
            }));
        }
        Ok(json!({ "scores": scores }))
    }

    fn evaluate(&self) -> Result<Value, Failure> {
        let recs = self.records("evaluate")?;
        let e = evaluate_portfolio(
            &recs,
            self.dataset.dim(),
            self.cli.common.mode,
            self.cli.common.as_of,
            &self.config,
        )?;
        Ok(json!({
            "mode": e.mode,
            "as_of": e.as_of,
            "contributing": e.contributing,
            "gplus": Score::new(e.gplus_score),
            "levels": self.levels(&e.work_fingerprint)?,
        }))
    }

    /// The worker: merged occupations if given, otherwise the ledger
    /// portfolio under the requested mode and date.
    fn work(&self, socs: &[String]) -> Result<(Fingerprint, Value), Failure> {
        if !socs.is_empty() {
            let fp = merge(self.occupation_fps(socs)?)?;
            return Ok((fp, json!({ "occupations": socs })));
        }
        if self.cli.common.ledger.is_none() {
            return Err(Failure::Usage(
                "performable needs --occupation SOC or --ledger FILE".into(),
            ));
        }
        let recs = self.records("performable")?;
        let e = evaluate_portfolio(
            &recs,
            self.dataset.dim(),
            self.cli.common.mode,
            self.cli.common.as_of,
            &self.config,
        )?;
        let source = json!({ "mode": e.mode, "as_of": e.as_of, "contributing": e.contributing });
        Ok((e.work_fingerprint, source))
    }

    fn performable(&self, socs: &[String], against: Option<&str>) -> Result<Value, Failure> {
        let (work, source) = self.work(socs)?;
        let work_score = Score::new(gplus(&work, &self.config));
        if let Some(soc) = against {
            let occ = self
                .dataset
                .occupation(soc)
                .ok_or_else(|| unknown("occupation", soc))?;
            let r = performable(&work, &occ.fingerprint, &self.config)?;
            let prims = self.dataset.primitives();
            let deficits: Vec<Value> = r
                .deficits
                .iter()
                .map(|d| {
                    let p = &prims[d.index];
                    let local = self.dataset.kind_local_index(d.index).map_or(0, |(_, i)| i);
                    json!({
                        "index": d.index,
                        "element_id": p.element_id,
                        "kind": p.kind,
                        "kind_index": local,
                        "name": p.name,
                        "required": Score::new(d.required),
                        "available": Score::new(d.available),
                        "deficit": Score::new(d.deficit),
                    })
                })
                .collect();
            return Ok(json!({
                "work": source,
                "work_gplus": work_score,
                "against": { "soc_code": occ.soc_code, "title": occ.title },
                "performable": r.performable,
                "deficits": deficits,
            }));
        }
        let bounds = self.task_bounds();
        let ids = count_performable(&work, &bounds, &self.config, self.exec)?;
        let tasks: Vec<Value> = ids
            .iter()
            .map(|id| {
                let t = &self.dataset.tasks()[id];
                json!({ "task_id": id, "soc_code": t.occupation_code, "text": t.text })
            })
            .collect();
        Ok(json!({
            "work": source,
            "work_gplus": work_score,
            "bounded_tasks": bounds.len(),
            "count": ids.len(),
            "tasks": tasks,
        }))
    }

    fn bounds(&self, kind: BoundKindArg) -> Result<(Value, CsvTable), Failure> {
        let dwa = derive_dwa_bounds(&self.dataset, self.exec);
        let mut table = CsvTable::new(&["key", "title", "status", "gplus", "gplus_display"]);
        let mut rows = Vec::new();
        let mut push = |key: String, title: &str, fp: Option<&Fingerprint>| {
            let score = fp.map(|f| gplus(f, &self.config));
            let [v, d] = match score {
                Some(s) => CsvTable::score_cells(s),
                None => [String::new(), String::new()],
            };
            let status = if score.is_some() {
                "bounded"
            } else {
                "excluded"
            };
            table.push(vec![key.clone(), title.to_string(), status.into(), v, d]);
            rows.push(json!({
                "key": key,
                "title": title,
                "status": status,
                "gplus": score.map(Score::new),
            }));
        };
        let (summary, excluded) = match kind {
            BoundKindArg::Dwa => {
                for a in self.dataset.detailed_activities() {
                    push(a.label.to_string(), &a.title, dwa.get(&a.label));
                }
                let st = self.summarize(dwa.bounds.iter().map(|(k, v)| (k.clone(), v)))?;
                let excl: Vec<String> = dwa.excluded.iter().map(|k| k.to_string()).collect();
                (st, excl)
            }
            BoundKindArg::Task => {
                let tasks = derive_task_bounds(&self.dataset, &dwa, self.exec);
                for t in self.dataset.tasks().values() {
                    push(t.task_id.to_string(), &t.text, tasks.get(&t.task_id));
                }
                let st = self.summarize(tasks.bounds.iter().map(|(k, v)| (*k, v)))?;
                let excl: Vec<String> = tasks.excluded.iter().map(|k| k.to_string()).collect();
                (st, excl)
            }
        };
        let kind_name = match kind {
            BoundKindArg::Dwa => "dwa",
            BoundKindArg::Task => "task",
        };
        let payload = json!({
            "kind": kind_name,
            "bounded": rows.len() - excluded.len(),
            "excluded": excluded,
            "stats": summary,
            "entries": rows,
        });
        Ok((payload, table))
    }

    /// Distribution summary, or null for an empty population.
    fn summarize<'a, K>(
        &self,
        fps: impl IntoIterator<Item = (K, &'a Fingerprint)>,
    ) -> Result<Value, Failure>
    where
        K: Ord + Clone + Send + Sync + std::fmt::Display,
    {
        match stats(fps, &self.config, self.exec) {
            Ok(s) => Ok(stats_json(&s)),
            Err(Error::EmptyInput(_)) => Ok(Value::Null),
            Err(e) => Err(e.into()),
        }
    }

    fn stats(&self, of: Population) -> Result<(Value, CsvTable), Failure> {
        let ds = &self.dataset;
        let (name, s, title): (&str, DistributionStats<String>, TitleLookup) = match of {
            Population::Occupations => (
                "occupations",
                stats(
                    ds.occupations()
                        .iter()
                        .map(|(k, o)| (k.to_string(), &o.fingerprint)),
                    &self.config,
                    self.exec,
                )?,
                Box::new(|k: &str| ds.occupation(k).map_or(String::new(), |o| o.title.clone())),
            ),
            Population::Dwa => {
                let b = derive_dwa_bounds(ds, self.exec);
                let s = stats(
                    b.bounds.iter().map(|(k, v)| (k.clone(), v)),
                    &self.config,
                    self.exec,
                )?;
                (
                    "dwa",
                    relabel(s),
                    Box::new(|k: &str| {
                        k.parse::<ContentModelLabel>()
                            .ok()
                            .and_then(|l| ds.activities().get(&l))
                            .map_or(String::new(), |a| a.title.clone())
                    }),
                )
            }
            Population::Tasks => {
                let b = self.task_bounds();
                let s = stats(
                    b.bounds.iter().map(|(k, v)| (*k, v)),
                    &self.config,
                    self.exec,
                )?;
                (
                    "tasks",
                    relabel(s),
                    Box::new(|k: &str| {
                        k.parse::<TaskId>()
                            .ok()
                            .and_then(|id| ds.tasks().get(&id))
                            .map_or(String::new(), |t| t.text.clone())
                    }),
                )
            }
            Population::Subtasks => {
                let recs = self.records("stats --of subtasks")?;
                let mode = self.cli.common.mode;
                let as_of = self.cli.common.as_of;
                let picked: Vec<&SubtaskRecord> = recs
                    .iter()
                    .filter(|r| {
                        r.succeeded
                            && mode.is_none_or(|m| r.control_mode == m)
                            && as_of.is_none_or(|d| r.first_success_date <= d)
                    })
                    .collect();
                let s = stats(
                    picked.iter().map(|r| {
                        (
                            format!("{}@{}", r.subtask_id, r.control_mode.as_str()),
                            &r.fingerprint,
                        )
                    }),
                    &self.config,
                    self.exec,
                )?;
                let descriptions: BTreeMap<String, String> = picked
                    .iter()
                    .map(|r| {
                        (
                            format!("{}@{}", r.subtask_id, r.control_mode.as_str()),
                            r.description.clone(),
                        )
                    })
                    .collect();
                (
                    "subtasks",
                    s,
                    Box::new(move |k: &str| descriptions.get(k).cloned().unwrap_or_default()),
                )
            }
        };

        let mut payload = stats_json(&s);
        payload["population"] = json!(name);
        payload["min_title"] = json!(title(&s.min_key));
        payload["max_title"] = json!(title(&s.max_key));

        let mut table = CsvTable::new(&[
            "population",
            "count",
            "mean",
            "mean_display",
            "std",
            "std_display",
            "min_key",
            "min_title",
            "min_gplus",
            "min_display",
            "max_key",
            "max_title",
            "max_gplus",
            "max_display",
        ]);
        let [mean, mean_d] = CsvTable::score_cells(s.mean);
        let [std, std_d] = CsvTable::score_cells(s.std);
        let [lo, lo_d] = CsvTable::score_cells(s.min_score);
        let [hi, hi_d] = CsvTable::score_cells(s.max_score);
        table.push(vec![
            name.into(),
            s.count.to_string(),
            mean,
            mean_d,
            std,
            std_d,
            s.min_key.clone(),
            title(&s.min_key),
            lo,
            lo_d,
            s.max_key.clone(),
            title(&s.max_key),
            hi,
            hi_d,
        ]);
        Ok((payload, table))
    }

    fn series(&self) -> Result<Vec<TimelineSeries>, Failure> {
        let recs = self.records("timeline")?;
        let bounds = self.task_bounds();
        self.modes()
            .into_iter()
            .map(|mode| {
                let points = build_timeline(
                    &recs,
                    self.dataset.dim(),
                    Some(mode),
                    Some(&bounds),
                    &self.config,
                    self.exec,
                )?;
                Ok(TimelineSeries { mode, points })
            })
            .collect()
    }

    fn timeline(&self) -> Result<(Value, CsvTable), Failure> {
        let series = self.series()?;
        let mut table = CsvTable::new(&[
            "mode",
            "date",
            "gplus",
            "gplus_display",
            "performable_task_count",
            "type_tags",
        ]);
        let mut out = Vec::new();
        for s in &series {
            let mut points = Vec::new();
            for p in &s.points {
                let [v, d] = CsvTable::score_cells(p.gplus_score);
                table.push(vec![
                    s.mode.as_str().to_string(),
                    p.date.to_string(),
                    v,
                    d,
                    p.performable_task_count.to_string(),
                    p.type_tags.join(";"),
                ]);
                points.push(json!({
                    "date": p.date,
                    "gplus": Score::new(p.gplus_score),
                    "performable_task_count": p.performable_task_count,
                    "type_tags": p.type_tags,
                }));
            }
            out.push(json!({ "mode": s.mode, "points": points }));
        }
        Ok((json!({ "series": out }), table))
    }

    fn forecast(&self, target: Option<f64>) -> Result<Value, Failure> {
        let target = match target {
            Some(t) if !t.is_finite() => {
                return Err(Failure::Usage(format!("--target must be finite, got {t}")))
            }
            Some(t) => t,
            None => gplus(&Fingerprint::maximal(self.dataset.dim()), &self.config),
        };
        let mut forecasts = Vec::new();
        let explicit = self.cli.common.mode.is_some();
        for s in self.series()? {
            let f = match forecast(&s.points, target) {
                Ok(f) => f,
                // without --mode, one sparse series should not sink the other
                Err(Error::InsufficientData(why)) if !explicit => {
                    forecasts.push(json!({
                        "mode": s.mode,
                        "points": s.points.len(),
                        "insufficient_data": why,
                    }));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            forecasts.push(json!({
                "mode": s.mode,
                "points": s.points.len(),
                "first_date": s.points.first().map(|p| p.date),
                "slope_per_month": Score::new(f.slope),
                "intercept": Score::new(f.intercept),
                "current": Score::new(f.current_score),
                "target": Score::new(f.saturation_target),
                "months_to_saturation": f.months_to_saturation.map(Score::new),
            }));
        }
        Ok(json!({ "forecasts": forecasts }))
    }

    fn plot(&self) -> Result<Value, Failure> {
        let path = self
            .cli
            .common
            .out
            .as_ref()
            .expect("checked before dispatch");
        let series = self.series()?;
        let svg = render_timeline_svg(&series)?;
        write_file(path, &svg)?;
        let summary: Vec<Value> = series
            .iter()
            .map(|s| {
                json!({
                    "mode": s.mode,
                    "points": s.points.len(),
                    "final_gplus": s.points.last().map(|p| Score::new(p.gplus_score)),
                })
            })
            .collect();
        Ok(json!({ "svg": path.display().to_string(), "series": summary }))
    }
}

fn relabel<K: ToString>(s: DistributionStats<K>) -> DistributionStats<String> {
    DistributionStats {
        count: s.count,
        mean: s.mean,
        std: s.std,
        min_key: s.min_key.to_string(),
        min_score: s.min_score,
        max_key: s.max_key.to_string(),
        max_score: s.max_score,
    }
}

fn stats_json<K: std::fmt::Display>(s: &DistributionStats<K>) -> Value {
    json!({
        "count": s.count,
        "mean": Score::new(s.mean),
        "std": Score::new(s.std),
        "min_key": s.min_key.to_string(),
        "min_gplus": Score::new(s.min_score),
        "max_key": s.max_key.to_string(),
        "max_gplus": Score::new(s.max_score),
    })
}
