use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shafbound")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

const PIPELINE: [&str; 11] = ["constants", "--g", "2", "--s", "0", "--n", "1", "--v", "2", "--h", "[-1,2]"];

#[test]
fn pipeline_constants() {
    let o = run(&PIPELINE);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["N"], "32828");
    assert_eq!(r["M"], "131315");
    assert_eq!(r["m0"], 16);
    assert_eq!(r["mode"], "exact-h");
    assert_eq!(r["precision"], 50);
    assert_eq!(r["inputs"]["h"], serde_json::json!(["-1", "2"]));
    assert_eq!(r["C"]["level"], 2);
    let ll: f64 = r["C"]["loglog10"].as_str().unwrap().parse().unwrap();
    assert!((340.0..=345.0).contains(&ll));
    assert!(r["C"]["enclosure_log10_width"].is_string());
}

#[test]
fn gotzmann_example() {
    let o = run(&["gotzmann", "--poly", "[1,3]"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["a"], serde_json::json!([1, 1, 1, 0]));
    assert_eq!(r["length"], 4);
    let compact = serde_json::to_string(&r).unwrap();
    assert!(compact.starts_with(r#"{"a":[1,1,1,0],"length":4,"#), "{compact}");
}

#[test]
fn validation_exits_one() {
    let o = run(&["constants", "--g", "0", "--s", "2", "--n", "1", "--v", "2", "--h", "[-1,2]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("2g-2+s must be positive"));
    assert_eq!(run(&["constants", "--g", "2"]).status.code(), Some(1));
    assert_eq!(run(&["gotzmann", "--poly", "[1.5]"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--g", "2", "--s", "0", "--n", "1", "--v", "2", "--h", "[-1,3]"]).status.code(), Some(1));
}

#[test]
fn computation_errors_exit_two() {
    let o = run(&["gotzmann", "--poly", "[-5,1,1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Gotzmann"));
}

#[test]
fn json_round_trip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for extra in [&[][..], &["--mode", "volume-bounded"][..], &["--pluricanonical", "--precision", "30"][..]] {
        let mut args = PIPELINE.to_vec();
        args.extend_from_slice(extra);
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0), "{extra:?}");
        let path = dir.path().join("report.json");
        fs::write(&path, &first.stdout).unwrap();
        let again = run(&["constants", "--inputs", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0));
        assert_eq!(stdout(&first), stdout(&again), "{extra:?}");
    }
}

#[test]
fn out_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let mut args = PIPELINE.to_vec();
    args.extend_from_slice(&["--format", "csv", "--out", path.to_str().unwrap()]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "index");
    assert_eq!(header.last().unwrap(), "error");
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert_eq!(&rows[0][col("N")], "32828");
    assert_eq!(&rows[0][col("C_level")], "2");
    let mut args = PIPELINE.to_vec();
    args.extend_from_slice(&["--format", "text"]);
    assert!(stdout(&run(&args)).contains("N 32828"));
}

#[test]
fn chow_and_coeffbound() {
    let r = json(&run(&["chow", "--m", "2", "--kappa", "1", "--delta1", "1", "--delta2", "1"]));
    assert_eq!(r["bound"]["int"], "729");
    let r = json(&run(&["coeffbound", "--n", "1", "--v", "2", "--h", "[-1,2]"]));
    assert_eq!(r["all_within"], true);
    assert_eq!(r["bounds"][1]["bound"], "40");
    let r = json(&run(&["coeffbound", "--n", "1", "--v", "2", "--h", "[40,2]"]));
    assert_eq!(r["all_within"], false);
}

fn grid_json(entries: &[&str]) -> String {
    format!("{{\"grid\": [{}]}}", entries.join(","))
}

#[test]
fn sweep_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let entries = [
        r#"{"g": 2, "s": 0, "n": 1, "v": 2, "h": [-1, 2]}"#,
        r#"{"g": 5, "s": 3, "n": 1, "v": "8"}"#,
        r#"{"g": 1, "s": 1, "n": 1, "v": 2, "h": ["-1", "2"]}"#,
        r#"{"g": 0, "s": 3, "n": 2, "v": 2, "h": [1, -1, 1]}"#,
        r#"{"g": 3, "s": 0, "n": 1, "v": 4, "pluricanonical": true}"#,
        r#"{"g": 2, "s": 0, "n": 1, "v": 2, "h": [-1, 2], "mode": "volume-bounded"}"#,
    ];
    let path = dir.path().join("grid.json");
    fs::write(&path, grid_json(&entries)).unwrap();
    let one = run(&["sweep", "--grid", path.to_str().unwrap(), "--format", "csv", "--jobs", "1"]);
    let many = run(&["sweep", "--grid", path.to_str().unwrap(), "--format", "csv", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(stdout(&one), stdout(&many));
    let text = stdout(&many);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), entries.len());
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(&r[0], i.to_string().as_str());
    }
    assert_eq!(&rows[1][1], "5");
    assert_eq!(&rows[5][7], "volume-bounded");
    // the first row matches a single constants run
    let single = stdout(&run(&[&PIPELINE[..], &["--format", "csv"][..]].concat()));
    assert_eq!(single.lines().nth(1), text.lines().nth(1));
}

#[test]
fn sweep_validates_everything_first() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    fs::write(&path, grid_json(&[r#"{"g": 2, "s": 0, "n": 1, "v": 2}"#, r#"{"g": 0, "s": 1, "n": 1, "v": 2}"#])).unwrap();
    let o = run(&["sweep", "--grid", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid entry 1"));
    fs::write(&path, r#"{"grid": [{"g": 2, "s": 0, "n": 1, "v": 2, "bogus": 1}]}"#).unwrap();
    assert_eq!(run(&["sweep", "--grid", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sweep_reports_row_errors() {
    // h(m0) = 16 + b < n + 2 for b = -14: ExponentNegative on that row only
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    let entries = [r#"{"g": 2, "s": 0, "n": 1, "v": 1, "h": [-14, 1]}"#, r#"{"g": 2, "s": 0, "n": 1, "v": 2, "h": [-1, 2]}"#];
    fs::write(&path, grid_json(&entries)).unwrap();
    let o = run(&["sweep", "--grid", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].iter().last().unwrap().contains("h(m0)"));
    assert_eq!(rows[1].iter().last().unwrap(), "");
}
