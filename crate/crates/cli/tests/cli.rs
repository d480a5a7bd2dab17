use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/mini")
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn gplus(args: &[&str]) -> Outcome {
    let mut argv = vec!["gplus".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = gplus_cli::run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn with_data(extra: &[&str]) -> Outcome {
    let data = fixture().display().to_string();
    let ledger = fixture().join("subtasks.tsv").display().to_string();
    let mut args = vec![
        "--data",
        data.as_str(),
        "--ledger",
        ledger.as_str(),
        "--no-timestamp",
    ];
    args.extend_from_slice(extra);
    gplus(&args)
}

fn close(a: &Value, b: f64) -> bool {
    (a.as_f64().unwrap() - b).abs() < 1e-9
}

#[test]
fn help_and_version_exit_zero() {
    let o = gplus(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("timeline"));
    assert_eq!(gplus(&["--version"]).code, 0);
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["frobnicate"], "frobnicate"),
        (&["--mode", "remote", "evaluate"], "--mode"),
        (&["--as-of", "2022-13-01", "evaluate"], "--as-of"),
        (&["--norm", "pinned:-3", "evaluate"], "--norm"),
        (&["--comparison", "loose", "evaluate"], "--comparison"),
        (
            &["--format", "csv", "gplus", "--occupation", "41-2031.00"],
            "--format",
        ),
        (&["stats", "--of", "galaxies"], "--of"),
        (&["plot"], "--out"),
    ];
    for (args, flag) in cases {
        let o = with_data(args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.stderr);
        assert!(o.stderr.contains(flag), "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty());
    }
    let data = fixture().display().to_string();
    let o = gplus(&["--data", &data, "evaluate"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--ledger"), "{}", o.stderr);
}

fn broken_copy(file: &str, f: impl FnOnce(String) -> String) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for e in fs::read_dir(fixture()).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    let p = dir.path().join(file);
    let text = fs::read_to_string(&p).unwrap();
    fs::write(&p, f(text)).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Outcome {
    let data = dir.display().to_string();
    let ledger = dir.join("subtasks.tsv").display().to_string();
    let mut all = vec![
        "--data",
        data.as_str(),
        "--ledger",
        ledger.as_str(),
        "--no-timestamp",
    ];
    all.extend_from_slice(args);
    gplus(&all)
}

#[test]
fn data_errors_exit_one_with_error_name() {
    let o = with_data(&["gplus", "--occupation", "99-0000.00"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("IntegrityError"), "{}", o.stderr);

    let dir = broken_copy("ratings.tsv", |t| t + "41-9012.00\t2.C.1.b\tseven\n");
    let o = run_in(dir.path(), &["validate"]);
    assert_eq!(o.code, 1);
    assert!(
        o.stderr.contains("ParseError") && o.stderr.contains("ratings.tsv"),
        "{}",
        o.stderr
    );

    let dir = broken_copy("subtasks.tsv", |t| t.replace("2022-09-01", "2022-09-31"));
    let o = run_in(dir.path(), &["evaluate"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("BadDate"), "{}", o.stderr);

    let conf = tempfile::NamedTempFile::new().unwrap();
    fs::write(conf.path(), "norm_constant = zero\n").unwrap();
    let o = with_data(&["--config", conf.path().to_str().unwrap(), "validate"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("InvalidConfig"), "{}", o.stderr);
}

#[test]
fn reports_are_byte_identical_without_timestamp() {
    let commands: &[&[&str]] = &[
        &["validate"],
        &["fingerprint"],
        &[
            "fingerprint",
            "--occupation",
            "41-2031.00",
            "--occupation",
            "41-9012.00",
        ],
        &["gplus", "--occupation", "27-2012.00"],
        &["evaluate", "--mode", "teleop"],
        &["performable"],
        &["performable", "--against", "41-2031.00"],
        &["bounds", "--kind", "dwa"],
        &["--format", "csv", "bounds"],
        &["stats", "--of", "tasks"],
        &["--format", "csv", "stats", "--of", "subtasks"],
        &["timeline"],
        &["--format", "csv", "timeline"],
        &["forecast"],
    ];
    for args in commands {
        let a = with_data(args);
        let b = with_data(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let stamped = gplus(&["--data", fixture().to_str().unwrap(), "validate"]).json();
    assert!(stamped["generated_at"].is_string());
}

#[test]
fn every_report_echoes_the_config() {
    let j = with_data(&["--norm", "pinned:300", "--comparison", "strict", "evaluate"]).json();
    assert_eq!(j["config"]["norm_constant"], 300.0);
    assert_eq!(j["config"]["norm_mode"], "pinned");
    assert_eq!(j["config"]["comparison"], "strictly_greater");
    assert_eq!(j["config"]["epsilon"], 1e-9);

    let csv = with_data(&["--format", "csv", "timeline"]).stdout;
    assert!(csv.starts_with("# report=timeline\n# norm_constant=267.3\n# norm_mode=pinned\n"));
}

#[test]
fn evaluate_matches_hand_values() {
    let j = with_data(&["--mode", "teleop", "evaluate"]).json();
    let p = &j["payload"];
    assert!(close(&p["gplus"]["value"], 11.5 * 100.0 / 267.3));
    assert_eq!(p["gplus"]["display"], "4.3");
    assert_eq!(p["mode"], "teleop");
    let ids: Vec<&str> = p["contributing"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(ids, ["S001", "S003", "S006", "S007"]);
    let levels: Vec<f64> = p["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["level"]["value"].as_f64().unwrap())
        .collect();
    assert_eq!(levels, [1.0, 3.0, 2.0, 2.0, 0.5, 3.0]);

    // as-of cuts the portfolio before the third teleop date
    let j = with_data(&["--mode", "teleop", "--as-of", "2022-08-31", "evaluate"]).json();
    assert!(close(&j["payload"]["gplus"]["value"], 8.5 * 100.0 / 267.3));
}

#[test]
fn shortfall_against_occupation() {
    let j = with_data(&["--mode", "teleop", "performable", "--against", "41-2031.00"]).json();
    let p = &j["payload"];
    assert_eq!(p["performable"], false);
    let work = [1.0, 3.0, 2.0, 2.0, 0.5, 3.0];
    let retail = [3.0, 3.5, 3.25, 1.5, 2.0, 4.5];
    let expected: Vec<u64> = (0..6)
        .filter(|&i| retail[i] > work[i])
        .map(|i| i as u64)
        .collect();
    let got: Vec<u64> = p["deficits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["index"].as_u64().unwrap())
        .collect();
    assert_eq!(got, expected);
    for d in p["deficits"].as_array().unwrap() {
        let i = d["index"].as_u64().unwrap() as usize;
        assert!(close(&d["deficit"]["value"], retail[i] - work[i]));
    }
}

#[test]
fn derived_norm_centres_occupations_on_100() {
    let j = with_data(&["--norm", "derived", "stats", "--of", "occupations"]).json();
    assert_eq!(j["config"]["norm_mode"], "derived_from_occupations");
    assert!(close(&j["config"]["norm_constant"], 49.25 / 3.0));
    assert!(close(&j["payload"]["mean"]["value"], 100.0));
    assert_eq!(j["payload"]["max_key"], "27-2012.00");
    assert_eq!(j["payload"]["max_title"], "Producers and Directors");
}

#[test]
fn excluded_bounds_stay_in_the_output() {
    let dir = broken_copy("activities.tsv", |t| {
        t + "4.A.1.a.1.I02.D03\tUnused activity\n"
    });
    let o = run_in(dir.path(), &["--format", "csv", "bounds", "--kind", "dwa"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout
            .contains("4.A.1.a.1.I02.D03,Unused activity,excluded,,\n"),
        "{}",
        o.stdout
    );
    let j = run_in(dir.path(), &["bounds", "--kind", "dwa"]).json();
    assert_eq!(j["payload"]["excluded"][0], "4.A.1.a.1.I02.D03");
    assert_eq!(j["payload"]["bounded"], 4);
}

#[test]
fn empty_ledger() {
    let data = fixture().display().to_string();
    let ledger = fixture().join("subtasks_empty.tsv").display().to_string();
    let base = [
        "--data",
        data.as_str(),
        "--ledger",
        ledger.as_str(),
        "--no-timestamp",
    ];
    let run = |extra: &[&str]| {
        let mut a = base.to_vec();
        a.extend_from_slice(extra);
        gplus(&a)
    };

    let o = run(&["evaluate"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let p = &o.json()["payload"];
    assert_eq!(p["gplus"]["value"], 0.0);
    assert_eq!(p["gplus"]["display"], "0.0");
    assert!(p["contributing"].as_array().unwrap().is_empty());

    let o = run(&["timeline"]);
    assert_eq!(o.code, 0);
    for s in o.json()["payload"]["series"].as_array().unwrap() {
        assert!(s["points"].as_array().unwrap().is_empty());
    }

    let o = run(&["forecast"]);
    assert_eq!(o.code, 0);
    assert!(o.json()["payload"]["forecasts"][0]["insufficient_data"].is_string());
    let o = run(&["--mode", "teleop", "forecast"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("InsufficientData"), "{}", o.stderr);
}

fn polyline(svg: &str, class: &str, mode: &str) -> Vec<(f64, f64)> {
    let open = format!(r#"<g class="{class}" data-mode="{mode}">"#);
    let group = &svg[svg.find(&open).expect("series group")..];
    let group = &group[..group.find("</g>").unwrap()];
    let start = group.find(r#"points=""#).expect("polyline") + 8;
    let pts = &group[start..];
    pts[..pts.find('"').unwrap()]
        .split(' ')
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn plot_coordinates_follow_the_timeline() {
    use gplus_core::report::LAYOUT;

    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("t.svg");
    let o = with_data(&["plot", "--out", svg_path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let svg = fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));

    let tl = with_data(&["timeline"]).json();
    let series = tl["payload"]["series"].as_array().unwrap();
    let day = |s: &str| chrono::NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap();
    let mut dates = Vec::new();
    let mut top: f64 = 0.0;
    let mut top_count: f64 = 0.0;
    for s in series {
        for p in s["points"].as_array().unwrap() {
            dates.push(day(p["date"].as_str().unwrap()));
            top = top.max(p["gplus"]["value"].as_f64().unwrap());
            top_count = top_count.max(p["performable_task_count"].as_f64().unwrap());
        }
    }
    let first = *dates.iter().min().unwrap();
    let span = (*dates.iter().max().unwrap() - first).num_days() as f64;
    let score_max = ((top / 10.0).ceil() * 10.0).max(10.0);
    let count_max = ((top_count / 5.0).ceil() * 5.0).max(5.0);
    let w = LAYOUT.width - LAYOUT.left - LAYOUT.right;
    let h = LAYOUT.height - LAYOUT.top - LAYOUT.bottom;

    let teleop = series.iter().find(|s| s["mode"] == "teleop").unwrap();
    let pts = teleop["points"].as_array().unwrap();
    let drawn = polyline(&svg, "gplus", "teleop");
    let counts = polyline(&svg, "counts", "teleop");
    assert_eq!(drawn.len(), pts.len());
    for ((p, (x, y)), (_, cy)) in pts.iter().zip(&drawn).zip(&counts) {
        let days = (day(p["date"].as_str().unwrap()) - first).num_days() as f64;
        let ex = LAYOUT.left + w * days / span;
        let ey = LAYOUT.top + h * (1.0 - p["gplus"]["value"].as_f64().unwrap() / score_max);
        let ecy =
            LAYOUT.top + h * (1.0 - p["performable_task_count"].as_f64().unwrap() / count_max);
        assert!(
            (x - ex).abs() <= 0.005 && (y - ey).abs() <= 0.005,
            "({x},{y}) vs ({ex},{ey})"
        );
        assert!((cy - ecy).abs() <= 0.005);
    }
    // cumulative g+ never falls, so the line never rises on screen
    assert!(drawn
        .windows(2)
        .all(|w| w[1].0 > w[0].0 && w[1].1 <= w[0].1));
    assert!(svg.contains("teleop (g+ 4.3)"));
}
