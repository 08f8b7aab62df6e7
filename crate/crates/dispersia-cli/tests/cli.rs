//! End-to-end checks of the command-line interface: output schema,
//! determinism across worker counts, agreement between independent
//! evaluation methods, and rejection of contradictory flags.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dispersia(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dispersia"));
    cmd.args(args).env_remove("DISPERSIA_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    dispersia(args).output().expect("binary should launch")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("output should be UTF-8")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("diagnostics should be UTF-8")
}

/// Data rows of a CSV report: everything after the `#` header block
/// and the column-name line, split into comma-separated floats.
fn data_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|line| !line.starts_with('#') && !line.is_empty())
        .skip(1)
        .map(|line| {
            line.split(',')
                .map(|cell| cell.parse().expect("cells should be numbers"))
                .collect()
        })
        .collect()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dispersia-cli-{}-{name}", std::process::id()))
}

#[test]
fn snapshot_emits_the_requested_grid_with_a_metadata_header() {
    let output = run(&["snapshot", "--t-star", "15", "--points", "11"]);
    assert!(output.status.success());
    let text = stdout_of(&output);

    let header: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(header.iter().any(|l| l.contains("quadratic")));
    assert!(header.iter().any(|l| l.contains("method: exact")));
    assert!(header.iter().any(|l| l.contains("t-star: 15")));
    assert_eq!(text.lines().nth(header.len()), Some("x,u"));

    let rows = data_rows(text);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[10][0], 40.0);
    assert!(rows.windows(2).all(|pair| pair[0][0] < pair[1][0]));
    assert!(rows.iter().all(|row| row[1].is_finite()));
}

#[test]
fn output_is_byte_identical_across_worker_counts() {
    let args = [
        "spacetime",
        "--t-star-max",
        "8",
        "--t-points",
        "10",
        "--points",
        "30",
        "--method",
        "approx",
    ];
    let single = dispersia(&args)
        .env("DISPERSIA_THREADS", "1")
        .output()
        .expect("binary should launch");
    let pooled = dispersia(&args)
        .env("DISPERSIA_THREADS", "4")
        .output()
        .expect("binary should launch");
    assert!(single.status.success());
    assert!(pooled.status.success());
    assert_eq!(single.stdout, pooled.stdout);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let path = temp_path("snapshot.csv");
    let direct = run(&["snapshot", "--t-star", "5", "--points", "7"]);
    assert!(direct.status.success());

    let saved = run(&[
        "snapshot",
        "--t-star",
        "5",
        "--points",
        "7",
        "--out",
        path.to_str().expect("temp path should be UTF-8"),
    ]);
    assert!(saved.status.success());
    assert!(saved.stdout.is_empty());
    let contents = std::fs::read(&path).expect("the output file should exist");
    assert_eq!(contents, direct.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn envelope_column_matches_the_envelope_subcommand() {
    let shared = ["--t-star", "15", "--points", "9", "--x-star-max", "30"];
    let mut snapshot_args = vec!["snapshot", "--envelope"];
    snapshot_args.extend_from_slice(&shared);
    let mut envelope_args = vec!["envelope"];
    envelope_args.extend_from_slice(&shared);

    let snapshot = run(&snapshot_args);
    let envelope = run(&envelope_args);
    assert!(snapshot.status.success());
    assert!(envelope.status.success());

    let with_column = data_rows(stdout_of(&snapshot));
    let alone = data_rows(stdout_of(&envelope));
    assert_eq!(with_column.len(), alone.len());
    for (row, reference) in with_column.iter().zip(&alone) {
        assert_eq!(row[0], reference[0]);
        assert_eq!(row[2], reference[1], "the two paths share one evaluator");
    }
}

#[test]
fn quadrature_agrees_with_the_closed_form_through_the_cli() {
    let shared = ["--t-star", "10", "--points", "5", "--x-star-max", "16"];
    let mut exact_args = vec!["snapshot", "--method", "exact"];
    exact_args.extend_from_slice(&shared);
    let mut pv_args = vec!["snapshot", "--method", "pv"];
    pv_args.extend_from_slice(&shared);

    let exact = run(&exact_args);
    let pv = run(&pv_args);
    assert!(exact.status.success());
    assert!(pv.status.success());

    for (row, reference) in data_rows(stdout_of(&pv))
        .iter()
        .zip(&data_rows(stdout_of(&exact)))
    {
        let gap = (row[1] - reference[1]).abs();
        assert!(
            gap <= 1e-6,
            "pv and exact disagree by {gap:.3e} at x = {}",
            row[0]
        );
    }
}

#[test]
fn oracle_subcommand_emits_a_spacetime_table() {
    let output = run(&[
        "oracle",
        "--pde",
        "wave",
        "--omega",
        "5",
        "--dx",
        "0.05",
        "--dt",
        "0.04",
        "--length",
        "6",
        "--duration",
        "3",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let header: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(header.iter().any(|l| l.contains("wave")));
    assert_eq!(text.lines().nth(header.len()), Some("x,t,u"));

    let rows = data_rows(text);
    let nx = rows.iter().take_while(|row| row[1] == 0.0).count();
    assert_eq!(nx, 121, "6 / 0.05 + 1 positions per stored time");
    assert_eq!(rows.len() % nx, 0, "whole time slices only");
    assert!(rows.iter().all(|row| row[2].is_finite()));
}

#[test]
fn verify_suite_filter_reports_and_exits_clean() {
    let output = run(&["verify", "--suite", "fresnel"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "four checks and a summary");
    assert!(lines[..4]
        .iter()
        .all(|l| l.starts_with("[PASS] fresnel/") && l.contains("required <=")));
    assert_eq!(lines[4], "4 of 4 checks passed");
}

#[test]
fn contradictory_flags_are_rejected() {
    let cases: &[&[&str]] = &[
        &["snapshot", "--t-star", "5", "--mode", "burst"],
        &["snapshot", "--t-star", "5", "--n", "3"],
        &[
            "snapshot",
            "--t-star",
            "5",
            "--dispersion",
            "klein-gordon",
            "--omega",
            "5",
        ],
        &["snapshot", "--t-star", "5", "--method", "oracle"],
        &["snapshot", "--t-star", "5", "--pv-tol", "1e-7"],
        &["snapshot", "--points", "9"],
        &["snapshot", "--t", "5", "--t-star", "5"],
        &["envelope", "--t-star", "5", "--method", "pv"],
        &["envelope", "--t-star", "5", "--mode", "burst", "--n", "2"],
        &["verify", "--suite", "nonexistent"],
    ];
    for args in cases {
        let output = run(args);
        assert!(
            !output.status.success(),
            "{args:?} should be rejected, stdout: {}",
            stdout_of(&output)
        );
        assert!(
            !stderr_of(&output).is_empty(),
            "{args:?} should explain its rejection"
        );
    }
}

#[test]
fn invalid_thread_cap_is_rejected() {
    let output = dispersia(&["verify", "--suite", "fresnel"])
        .env("DISPERSIA_THREADS", "zero")
        .output()
        .expect("binary should launch");
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("DISPERSIA_THREADS"));
}
