use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flaghodge")).args(args).output().unwrap()
}

fn lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn spectra_of_turan_graph() {
    let out = run(&["spectra", "--gen", "turan:3:2"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let spectrum = recs.iter().find(|r| r["record"] == "spectrum").unwrap();
    assert_eq!(spectrum["eta"], 3);
    assert_eq!(spectrum["betti"][2], 1);
    assert!(recs.iter().filter(|r| r["record"] == "check").all(|r| r["pass"] == true));
}

#[test]
fn complete_graph_has_infinite_eta() {
    let out = run(&["spectra", "--gen", "complete:4"]);
    let recs = lines(&out);
    assert_eq!(recs.iter().find(|r| r["record"] == "spectrum").unwrap()["eta"], "inf");
}

#[test]
fn graph_file_input() {
    let mut f = std::env::temp_dir();
    f.push(format!("flaghodge-cli-{}.txt", std::process::id()));
    std::fs::File::create(&f).unwrap().write_all(b"# C4\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = run(&["spectra", "--graph", f.to_str().unwrap(), "--independence"]);
    std::fs::remove_file(&f).ok();
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    // I(C_4) is two disjoint edges
    assert_eq!(recs.iter().find(|r| r["record"] == "spectrum").unwrap()["eta"], 1);
}

#[test]
fn malformed_input_exits_with_usage_code() {
    let mut f = std::env::temp_dir();
    f.push(format!("flaghodge-bad-{}.txt", std::process::id()));
    std::fs::write(&f, "3 2\n0 1\n1 x\n").unwrap();
    let out = run(&["spectra", "--graph", f.to_str().unwrap()]);
    std::fs::remove_file(&f).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3") || String::from_utf8_lossy(&out.stdout).contains("line 3"));
    assert_eq!(run(&["spectra", "--gen", "wheel:5"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_with_cap_code() {
    let out = run(&["--simplex-cap", "3", "spectra", "--gen", "complete:5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_output_has_a_header_and_check_rows() {
    let out = run(&["--format", "csv", "domination", "--gen", "cycle:6", "--reps", "cycle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    let header = rows.next().unwrap();
    assert!(header.contains("check") && header.contains("seed"));
    assert!(rows.count() > 0);
}

#[test]
fn sdr_on_family_file() {
    let mut f = std::env::temp_dir();
    f.push(format!("flaghodge-family-{}.json", std::process::id()));
    std::fs::write(&f, r#"{"ground": 3, "hypergraphs": [[[0], [1]], [[1]], [[2]]]}"#).unwrap();
    let out = run(&["sdr", "--family", f.to_str().unwrap()]);
    std::fs::remove_file(&f).ok();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = lines(&out);
    let sdr = recs.iter().find(|r| r["record"] == "sdr").unwrap();
    assert_eq!(sdr["search"]["choice"], serde_json::json!([0, 0, 0]));
}
