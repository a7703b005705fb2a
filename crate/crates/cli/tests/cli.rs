//! End-to-end tests of the binary: the gen/train/eval pipeline, the
//! snapshot and verify-theorem subcommands, and the exit-code contract
//! (0 success, 1 usage, 2 data/config, 3 verification failure).

use std::path::Path;
use std::process::{Command, Output};

fn sspo(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sspo"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn pipeline_gen_train_eval_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = sspo(
        dir.path(),
        &[
            "gen-toy", "--n-paired", "10", "--n-unpaired", "200", "--n-test", "100",
            "--seed", "7", "--out", "data",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for file in ["paired.jsonl", "unpaired.jsonl", "test.jsonl"] {
        assert!(dir.path().join("data").join(file).exists());
    }

    let out = sspo(
        dir.path(),
        &[
            "train", "--paired", "data/paired.jsonl", "--unpaired", "data/unpaired.jsonl",
            "--objective", "sspo", "--epochs", "5", "--seed", "7", "--out", "run",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["objective"], "sspo");
    assert!(dir.path().join("run/metrics.csv").exists());
    assert!(dir.path().join("run/metrics.jsonl").exists());
    assert!(dir.path().join("run/best.ckpt").exists());

    let out = sspo(
        dir.path(),
        &["eval", "--checkpoint", "run/best.ckpt", "--test", "data/test.jsonl"],
    );
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let accuracy = report["accuracy"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&accuracy));
    assert_eq!(report["n_test"], 100);
    assert_eq!(report["margins"].as_array().unwrap().len(), 100);

    let out = sspo(
        dir.path(),
        &[
            "snapshot", "--checkpoint", "run/final.ckpt", "--paired", "data/paired.jsonl",
            "--out", "snap.csv",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let snap = std::fs::read_to_string(dir.path().join("snap.csv")).unwrap();
    assert!(snap.starts_with("series,x,y\n"));
    assert!(snap.contains("threshold,"));
}

#[test]
fn objective_switch_writes_second_metrics_file() {
    let dir = tempfile::tempdir().unwrap();
    sspo(
        dir.path(),
        &[
            "gen-toy", "--n-paired", "10", "--n-unpaired", "50", "--n-test", "10",
            "--seed", "3", "--out", "data",
        ],
    );
    for (objective, out_dir) in [("sspo", "run_sspo"), ("simpo", "run_simpo")] {
        let unpaired: &[&str] = if objective == "sspo" {
            &["--unpaired", "data/unpaired.jsonl"]
        } else {
            &[]
        };
        let mut args = vec![
            "train", "--paired", "data/paired.jsonl", "--objective", objective,
            "--epochs", "3", "--seed", "3", "--out", out_dir,
        ];
        args.extend_from_slice(unpaired);
        let out = sspo(dir.path(), &args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir.path().join("run_sspo/metrics.csv")).unwrap();
    let b = std::fs::read(dir.path().join("run_simpo/metrics.csv")).unwrap();
    assert_ne!(a, b, "objectives should produce different metrics");
}

#[test]
fn identical_runs_are_bitwise_identical() {
    let dir = tempfile::tempdir().unwrap();
    sspo(
        dir.path(),
        &[
            "gen-toy", "--n-paired", "8", "--n-unpaired", "40", "--n-test", "5",
            "--seed", "2", "--out", "data",
        ],
    );
    for out_dir in ["a", "b"] {
        let out = sspo(
            dir.path(),
            &[
                "train", "--paired", "data/paired.jsonl", "--unpaired", "data/unpaired.jsonl",
                "--objective", "sspo", "--epochs", "4", "--seed", "2", "--out", out_dir,
            ],
        );
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(dir.path().join("a/metrics.csv")).unwrap(),
        std::fs::read(dir.path().join("b/metrics.csv")).unwrap()
    );
    assert_eq!(
        std::fs::read(dir.path().join("a/best.ckpt")).unwrap(),
        std::fs::read(dir.path().join("b/best.ckpt")).unwrap()
    );
}

#[test]
fn metrics_dir_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    sspo(
        dir.path(),
        &[
            "gen-toy", "--n-paired", "6", "--n-unpaired", "0", "--n-test", "5",
            "--seed", "4", "--out", "data",
        ],
    );
    let out = Command::new(env!("CARGO_BIN_EXE_sspo"))
        .current_dir(dir.path())
        .env("SSPO_METRICS_DIR", "elsewhere")
        .args([
            "train", "--paired", "data/paired.jsonl", "--objective", "simpo",
            "--epochs", "2", "--seed", "4", "--out", "run",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("elsewhere/metrics.csv").exists());
    assert!(!dir.path().join("run/metrics.csv").exists());
    assert!(dir.path().join("run/best.ckpt").exists());
}

#[test]
fn verify_theorem_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = sspo(
        dir.path(),
        &[
            "verify-theorem", "--mu-l", "-1", "--mu-w", "1", "--sigma", "0.3",
            "--n-l", "50", "--t", "1", "--trials", "10000", "--seed", "11",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], true);
    assert!((report["alpha_bound"].as_f64().unwrap() - 0.3866).abs() < 1e-4);

    // Inconsistent interval is a data error, not a verification failure.
    let out = sspo(
        dir.path(),
        &[
            "verify-theorem", "--mu-l", "-0.1", "--mu-w", "0.1", "--sigma", "0.3",
            "--n-l", "50", "--t", "1", "--trials", "100",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_config_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(sspo(dir.path(), &["no-such-command"]).status.code(), Some(1));
    assert_eq!(sspo(dir.path(), &["train", "--bogus-flag", "1"]).status.code(), Some(1));
    assert_eq!(sspo(dir.path(), &["--help"]).status.code(), Some(0));

    std::fs::write(dir.path().join("bad.conf"), "learning_rte = 0.1\n").unwrap();
    std::fs::write(dir.path().join("pairs.jsonl"), "").unwrap();
    let out = sspo(
        dir.path(),
        &[
            "train", "--config", "bad.conf", "--paired", "pairs.jsonl",
            "--objective", "simpo",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("learning_rte"), "diagnostic names the field: {err}");

    // Missing data file.
    let out = sspo(dir.path(), &["eval", "--checkpoint", "nope.ckpt", "--test", "nope.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_drives_training() {
    let dir = tempfile::tempdir().unwrap();
    sspo(
        dir.path(),
        &[
            "gen-toy", "--n-paired", "8", "--n-unpaired", "30", "--n-test", "5",
            "--seed", "9", "--out", "data",
        ],
    );
    std::fs::write(
        dir.path().join("run.conf"),
        "# toy config\nobjective = sspo\nepochs = 3\nbatch_paired = 4\nbatch_unpaired = 2\nlearning_rate = 5e-3\nseed = 9\n",
    )
    .unwrap();
    let out = sspo(
        dir.path(),
        &[
            "train", "--config", "run.conf", "--paired", "data/paired.jsonl",
            "--unpaired", "data/unpaired.jsonl", "--out", "run",
            "--epochs", "4", // flag overrides the file
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let metrics = std::fs::read_to_string(dir.path().join("run/metrics.csv")).unwrap();
    // 8 paired examples split 0.8 -> 6 train; batches of 4 -> 2 steps per
    // epoch; 4 epochs after the override -> 8 records plus the header.
    assert_eq!(metrics.lines().count(), 9);
}
