use std::process::{Command, Output};

use gnk::format::{read_trajectory, write_trajectory};
use gnk::manifest::{sha256_hex, RunManifest};
use gnk_core::trajectory::standard_generator_trajectory;
use gnk_core::StrandCount;

fn gnk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnk"))
        .args(args)
        .env_remove("GNK_BUDGET_VISITED")
        .env_remove("GNK_BUDGET_LENGTH")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HARD: &str = "A[(1,2),(3,4)] A[(1,3),(2,4)] A[(1,4),(2,3)] A[(2,1),(4,3)]";

#[test]
fn reduce_prints_word_and_trace() {
    let o = gnk(&[
        "reduce",
        "--trace",
        "A[(1,2),(1,3)] A[(1,2),(1,3)] A[(2,1),(2,3)]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A[(2,1),(2,3)]\ncancel @ 0\n\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        gnk(&["equal", "A[(1,2),(1,3)]", "A[(1,2),(1,3)]"])
            .status
            .code(),
        Some(0)
    );
    let o = gnk(&["equal", "A[(1,2),(1,3)]", ""]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(1), "unequal\n")
    );
    assert_eq!(gnk(&["reduce", "zz"]).status.code(), Some(2));
    assert_eq!(gnk(&["--n", "1", "reduce", ""]).status.code(), Some(2));
    let o = gnk(&["--n", "4", "--budget-visited", "1", "reduce", HARD]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gnk"))
        .args(["--n", "4", "reduce", HARD])
        .env("GNK_BUDGET_VISITED", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn manifest_records_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let p = path.to_str().unwrap();
    let o = gnk(&["--manifest", p, "phi", "a'[1,2,3]"]);
    assert_eq!(o.status.code(), Some(0));
    let m = RunManifest::read(&path).unwrap();
    assert_eq!(m.subcommand, "phi");
    assert_eq!(m.exit_code, 0);
    assert_eq!(m.output_sha256, sha256_hex(&o.stdout));
    assert_eq!(m.parameters.get("n").map(String::as_str), Some("3"));
    assert!(m.args.iter().any(|a| a == "a'[1,2,3]"));
}

#[test]
fn generated_trajectory_traces_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b23.traj");
    let p = path.to_str().unwrap();
    let o = gnk(&["gen-trajectory", "--gen", "2,3", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = gnk(&["trace", "--input", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("events: 2"), "{text}");
    assert!(text.contains("word: a'[1,3,2] a'[1,2,3]"), "{text}");
    assert!(text.contains("verdict: good-and-stable"), "{text}");
}

#[test]
fn tangent_trace_rejects_collinear_scale() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b12.traj");
    let p = path.to_str().unwrap();
    assert!(gnk(&["gen-trajectory", "--gen", "1,2", "-o", p])
        .status
        .success());
    assert_eq!(
        gnk(&["trace", "--mode", "tangent", "--input", p])
            .status
            .code(),
        Some(2)
    );
    assert!(gnk(&[
        "gen-trajectory",
        "--gen",
        "1,2",
        "--mode",
        "tangent",
        "-o",
        p
    ])
    .status
    .success());
    assert_eq!(
        gnk(&["trace", "--mode", "tangent", "--input", p])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn trajectory_format_round_trips_exactly() {
    let n = StrandCount::new(4).unwrap();
    let t = standard_generator_trajectory(n, 2, 4, 1.0).unwrap();
    let back = read_trajectory(&write_trajectory(&t)).unwrap();
    assert_eq!(back.times(), t.times());
    for s in 0..t.sample_count() {
        assert_eq!(back.sample(s), t.sample(s));
    }
    assert_eq!(back.scale(), t.scale());
}

#[test]
fn truncated_file_is_rejected() {
    let n = StrandCount::new(3).unwrap();
    let t = standard_generator_trajectory(n, 1, 2, 1.0).unwrap();
    let text = write_trajectory(&t);
    let cut: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
    let err = read_trajectory(&cut).unwrap_err().to_string();
    assert!(err.contains("header announces"), "{err}");
}
