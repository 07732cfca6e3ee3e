use std::path::PathBuf;
use std::process::{Command, Output};

fn semcom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semcom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn region_enc_prints_both_chains() {
    let out = semcom(&["region", "enc", &data("gridworld.spec")]);
    assert!(out.status.success());
    let text = stdout(&out);
    for needle in [
        "{UU,∅}       2/3 (0.6667)   7/18 (0.3889)",
        "{UU,RR}      10/3 (3.3333)  1/6 (0.1667)",
        "{RR,UU}      8/3 (2.6667)   2/3 (0.6667)",
        "{UURR,UUR}   14/3 (4.6667)  2/3 (0.6667)",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
}

#[test]
fn region_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("enc.csv");
    let out = semcom(&["region", "enc", &data("gridworld.spec"), "--csv", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "L_exact,D_exact,L_float,D_float,scheme");
    assert_eq!(lines.len(), 13);

    let dec = dir.path().join("dec.csv");
    assert!(semcom(&["region", "dec", &data("gridworld.spec"), "--csv", dec.to_str().unwrap()]).status.success());
    let csv = std::fs::read_to_string(&dec).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.starts_with("1841/513,")));
}

#[test]
fn compare_nodshake() {
    let out = semcom(&["compare", &data("nodshake.spec")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("encoding only            D = 0 (0.0000)"));
    assert!(text.contains("decoding only            D = 0 (0.0000)"));
    assert!(text.contains("CSED                     D = 1 (1.0000)"));
}

#[test]
fn decode_reports_receiver_gap() {
    let out = semcom(&["decode", &data("gridworld.spec"), "--prior", "rx", "--refine"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("D_PV  6/19 (0.3158)"));
    assert!(text.contains("gap   107/10260 (0.0104)"));
    assert!(text.contains("refined interpretation"));
}

#[test]
fn checks_exit_with_their_verdict() {
    let ok = semcom(&["check", "hamming-opt", &data("gridworld.spec")]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = semcom(&["check", "self-consistency", &data("nodshake.spec")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("self-consistent: no"));
    let t4 = semcom(&["check", "theorem4", &data("nodshake.spec")]);
    assert_eq!(t4.status.code(), Some(1));
    assert!(stdout(&t4).contains("2. self-consistent           no"));
}

#[test]
fn validate_broken_spec() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(data("nodshake.spec")).unwrap();
    let path = dir.path().join("broken.spec");
    std::fs::write(&path, good.replacen("cost = \"1\"", "cost = \"-1\"", 1)).unwrap();
    let out = semcom(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("negative cost"));

    std::fs::write(&path, "channel = [[").unwrap();
    let out = semcom(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    assert!(semcom(&["validate", &data("gridworld.spec")]).status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(semcom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(semcom(&["region", "sideways", &data("gridworld.spec")]).status.code(), Some(2));
    let bad_scheme = semcom(&["simulate", &data("gridworld.spec"), "--scheme", "lower:99", "--trials", "5", "--seed", "1"]);
    assert_eq!(bad_scheme.status.code(), Some(2));
    let bad_tie = semcom(&["region", "enc", &data("gridworld.spec"), "--tie-break", "coin"]);
    assert_eq!(bad_tie.status.code(), Some(2));
}

#[test]
fn oracle_agrees_and_respects_budget() {
    let out = semcom(&["oracle", "frontier", &data("gridworld.spec")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("196 deterministic encoders"));
    assert!(stdout(&out).contains("greedy frontier agrees: yes"));
    let out = semcom(&["oracle", "global", &data("gridworld.spec"), "--budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn simulation_is_reproducible() {
    let args = ["simulate", &data("gridworld.spec"), "--scheme", "csed-lower:2", "--trials", "2000", "--seed", "11"];
    let a = semcom(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&semcom(&args)));
    assert!(stdout(&a).contains("2000 trials, seed 11"));
}

#[test]
fn examples_match_shipped_specs() {
    for name in ["gridworld", "nodshake"] {
        let out = semcom(&["example", name]);
        assert!(out.status.success());
        let shipped = std::fs::read_to_string(data(&format!("{name}.spec"))).unwrap();
        assert_eq!(stdout(&out), shipped);
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.spec");
    assert!(semcom(&["example", "gridworld", "--out", path.to_str().unwrap()]).status.success());
    assert!(semcom(&["region", "csed", path.to_str().unwrap()]).status.success());
}
