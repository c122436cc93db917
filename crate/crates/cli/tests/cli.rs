use std::fs;
use std::process::{Command, Output};

use superint_core::rational::{parse_rational, rat};
use superint_core::report::{Report, Status};

fn superint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superint")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn spectrum_csv_groups_degenerate_levels() {
    let out = superint(&["spectrum", "--k", "2", "--alpha", "1/2", "--beta", "1/2", "--m-max", "2", "--n-max", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<_> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["m", "n", "a_n", "gamma", "energy", "multiplet"]);
    let rows: Vec<Vec<String>> = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert_eq!(rows.len(), 15);
    let find = |m: &str, n: &str| rows.iter().find(|r| r[0] == m && r[1] == n).unwrap().clone();
    let (a, b) = (find("1", "2"), find("0", "3"));
    assert_eq!(parse_rational(&a[4]).unwrap(), rat(18, 1));
    assert_eq!(a[4], b[4]);
    assert_eq!(a[5], b[5]);
    assert!(!text.contains('\r'));
}

#[test]
fn nonpositive_k_is_a_usage_error() {
    assert_eq!(superint(&["spectrum", "--k", "0"]).status.code(), Some(2));
    assert_eq!(superint(&["spectrum", "--k", "abc"]).status.code(), Some(2));
    assert_eq!(superint(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_integrals_passes_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let args = ["verify", "--suite", "integrals", "--k", "3/2", "--alpha", "1/2", "--beta", "0", "--m-max", "4", "--n-max", "8", "--output", p];
    let out = superint(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.count(Status::Fail), 0);
    assert!(report.checks.iter().any(|c| c.id.starts_with("integrals.xi1-commutes-with-h[") && c.status == Status::Pass));
    assert!(report.checks.iter().any(|c| c.id.contains("-printed-pairing") && c.status == Status::DeviationDocumented));
    let mut ids: Vec<_> = report.checks.iter().map(|c| c.id.clone()).collect();
    let sorted = {
        let mut s = ids.clone();
        s.sort();
        s
    };
    assert_eq!(ids, sorted);
    ids.dedup();
    assert_eq!(ids.len(), report.checks.len());
    assert_eq!(serde_json::to_string_pretty(&report).unwrap().trim_end(), text.trim_end());

    assert_eq!(superint(&args).status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = superint(&["spectrum", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compat_lists_entries_with_oracles() {
    let out = superint(&["compat", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let oracle = rdr.headers().unwrap().iter().position(|h| h == "oracle").unwrap();
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 8);
    assert!(rows.iter().all(|r| !r[oracle].is_empty()));

    let json: serde_json::Value = serde_json::from_str(&stdout(&superint(&["compat"]))).unwrap();
    let n0 = json.as_array().unwrap().iter().find(|e| e["id"] == "nn-ratio").unwrap();
    assert_eq!(n0["status"], "matches");
}

#[test]
fn sample_emits_one_row_per_grid_point() {
    let out = superint(&["sample", "--m", "1", "--n", "2", "--k", "3/2", "--alpha", "1/2", "--beta", "1/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 100);
    for r in &rows {
        let err: f64 = r[4].parse().unwrap();
        assert!(err <= 1e-10);
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("superint.toml");
    fs::write(&cfg, "k = \"2\"\nalpha = \"1/2\"\nbeta = \"1/2\"\nm-max = 1\nn-max = 2\nformat = \"csv\"\n").unwrap();
    let c = cfg.to_str().unwrap();

    let text = stdout(&superint(&["--config", c, "spectrum"]));
    assert_eq!(text.lines().count(), 1 + 2 * 3);
    assert!(text.lines().any(|l| l.starts_with("1,2,") && l.contains(",18/1,")));

    let text = stdout(&superint(&["--config", c, "spectrum", "--k", "1", "--m-max", "0"]));
    assert_eq!(text.lines().count(), 1 + 3);

    fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(superint(&["--config", c, "spectrum"]).status.code(), Some(2));
}

#[test]
fn poly_dumps_exact_coefficients() {
    let out = superint(&["poly", "--n", "1", "--alpha", "0", "--beta", "0", "--n-max", "2", "--m-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let text = json.to_string();
    assert!(text.contains("\"-1/2\""), "{text}");
}
