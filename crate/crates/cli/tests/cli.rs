use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wilson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wilson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wilson-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SMALL: &str = "# quick run\nsuites = functions\nsamples = 2\nn_max = 3\nx_max = 3\n";

#[test]
fn eval_prints_exact_values() {
    let params = scratch("p.txt", "q = 1/3\na = 2/7\nb = 3\nc = -5/2\nd = 7/4\ne = 11\n");
    let p = params.to_str().unwrap();
    let o = wilson(&["eval", "--family", "W", "--n", "0", "--x", "3", "--params-file", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = wilson(&["eval", "--family", "Z:up", "--n", "0", "--params-file", p]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = wilson(&["eval", "--family", "W", "--n", "2", "--x", "1", "--params-file", p]);
    assert_eq!(stdout(&o).trim(), "-6512117/19573103");
}

#[test]
fn verify_passes_and_records_are_reproducible() {
    let cfg = scratch("small.cfg", SMALL);
    let c = cfg.to_str().unwrap();
    let run = || {
        let o = wilson(&["verify", "--config", c, "--format", "records"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        stdout(&o)
            .lines()
            .map(|l| l.split(",\"wall_time_ms\"").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
    let o = wilson(&["verify", "--config", c, "--format", "records", "--sequential"]);
    let seq: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(",\"wall_time_ms\"").next().unwrap().to_string())
        .collect();
    assert_eq!(first, seq);
}

#[test]
fn injected_fault_exits_one_with_witness() {
    let cfg = scratch("fault.cfg", SMALL);
    let o = wilson(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--inject-fault",
        "--format",
        "records",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out
        .lines()
        .any(|l| l.contains("\"status\":\"nonzero\"") && l.contains("\"witness\":{\"at\"")));
}

#[test]
fn report_file_is_written() {
    let cfg = scratch("report.cfg", SMALL);
    let report = std::env::temp_dir().join(format!("wilson-cli-{}-report.txt", std::process::id()));
    let o = wilson(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("wilson "));
    assert!(text.contains("# samples = 2"));
    fs::remove_file(report).ok();
}

#[test]
fn algebra_and_limits_subcommands() {
    let o = wilson(&[
        "algebra",
        "--triplet",
        "XZ",
        "--rho-variant",
        "shift",
        "--mode",
        "closure",
        "--N",
        "4",
        "--samples",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("algebra/closure/XZ/"))
            .count(),
        5
    );

    let o = wilson(&[
        "limits",
        "--pair",
        "R3",
        "--grid",
        "10,100",
        "--samples",
        "1",
        "--format",
        "records",
    ]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(wilson(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(wilson(&["verify", "--N", "1"]).status.code(), Some(2));
    assert_eq!(wilson(&["limits", "--grid", "100,10"]).status.code(), Some(2));
    let bad = scratch("bad.cfg", "samples = 3/2\n");
    assert_eq!(
        wilson(&["verify", "--config", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        wilson(&[
            "eval",
            "--family",
            "W",
            "--n",
            "1",
            "--params-file",
            "/nonexistent/p.txt"
        ])
        .status
        .code(),
        Some(2)
    );
}
