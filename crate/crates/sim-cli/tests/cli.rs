//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

use flock_dynamics::ScenarioSpec;
use sim_cli::output::parse_trajectory_csv;
use sim_cli::RunSummary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sim-cli"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn help_exits_zero_and_names_both_subcommands() {
    let out = run_ok(bin().arg("--help"));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("run"));
    assert!(text.contains("compare"));
}

#[test]
fn short_leaderless_run_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(bin().args([
        "run",
        "--duration",
        "1.0",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    for name in [
        "proposed_trajectory.csv",
        "proposed_diagnostics.csv",
        "proposed_summary.json",
    ] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("proposed: completed"), "stdout: {text}");
    assert!(text.contains("no bound violation"), "stdout: {text}");
}

#[test]
fn unknown_key_and_unknown_law_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_arg = dir.path().to_str().unwrap().to_string();

    let out = bin()
        .args(["run", "--set", "params.zeta=1", "--out", &out_arg])
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("params.zeta"), "{}", stderr(&out));

    let out = bin()
        .args(["run", "--law", "banana", "--out", &out_arg])
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("banana"));

    let out = bin()
        .args(["run", "--law", "all", "--out", &out_arg])
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("compare"), "{}", stderr(&out));

    // Malformed flag usage is a config error as well, not clap's exit 2.
    let out = bin().args(["run", "--no-such-flag"]).output().unwrap();
    assert_eq!(code(&out), 64);
}

#[test]
fn recorded_violation_sets_exit_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "run",
            "--law",
            "model2",
            "--duration",
            "1.0",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("lower bound violated"), "stdout: {text}");
    // The run itself still completed: the alignment-only law never halts.
    let summary: RunSummary = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("model2_summary.json")).unwrap(),
    )
    .unwrap();
    assert!(summary.completed);
    assert_eq!(summary.violation.unwrap().side, "lower");
}

#[test]
fn beta_warning_lands_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(bin().args([
        "run",
        "--set",
        "params.beta=0.6",
        "--duration",
        "0.1",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    assert!(stderr(&out).contains("beta"), "{}", stderr(&out));
}

#[test]
fn emitted_trajectory_matches_the_in_process_run_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(bin().args([
        "run",
        "--duration",
        "0.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(dir.path().join("proposed_trajectory.csv")).unwrap();
    let rows = parse_trajectory_csv(&text).unwrap();

    let mut spec = ScenarioSpec::leaderless_three();
    spec.integrator.duration = 0.5;
    let outcome = flock_dynamics::run(&spec).unwrap();
    let steps = &outcome.trajectory.steps;

    assert_eq!(rows.len(), steps.len() * 3);
    for (r, row) in rows.iter().enumerate() {
        let step = &steps[r / 3];
        let agent = &step.state.agents[r % 3];
        let acc = step.controls[r % 3];
        assert_eq!(row.agent_id, r % 3);
        assert_eq!(row.t.to_bits(), step.state.time.to_bits());
        assert_eq!(row.pos[0].to_bits(), agent.position.x().to_bits());
        assert_eq!(row.pos[1].to_bits(), agent.position.y().to_bits());
        assert_eq!(row.vel[0].to_bits(), agent.velocity.x().to_bits());
        assert_eq!(row.vel[1].to_bits(), agent.velocity.y().to_bits());
        assert_eq!(row.acc[0].to_bits(), acc.x().to_bits());
        assert_eq!(row.acc[1].to_bits(), acc.y().to_bits());
    }
}

fn tree_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries
}

#[test]
fn short_compare_is_clean_and_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run_ok(bin().args([
            "compare",
            "--duration",
            "0.3",
            "--out",
            dir.path().to_str().unwrap(),
        ]));
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("model3"), "stdout: {text}");
    }
    let a = tree_bytes(dir_a.path());
    let b = tree_bytes(dir_b.path());
    assert_eq!(a.len(), 14, "files: {:?}", a.iter().map(|e| &e.0).collect::<Vec<_>>());
    for ((name_a, bytes_a), (name_b, bytes_b)) in a.iter().zip(&b) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "{name_a} differs between runs");
    }

    let summaries: Vec<RunSummary> = serde_json::from_str(
        &std::fs::read_to_string(dir_a.path().join("compare_summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summaries.len(), 4);
    assert_eq!(summaries[0].law, "proposed");
}
