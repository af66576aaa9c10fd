use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn jobs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs")
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_georadon"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("georadon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn write_job(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn transform_job_writes_csv() {
    let job = jobs().join("hyper_cap_transform.toml");
    let out = run(&["transform", "--job", job.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("model=hyperboloid canonical=geodesic_distance arg_kind=cosh_distance"));
    assert_eq!(lines.next(), Some("cosh_distance,value"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 1.0);
    assert!((first[1] - 3f64.sqrt()).abs() < 1e-8);
    assert_eq!(text.lines().count(), 52);
}

#[test]
fn invalid_job_exits_two_naming_the_constraint() {
    let job = write_job("bad.toml", "params = { n = 3, j = 2, k = 1 }\nprofile = { family = \"gaussian\", sigma = 1.0 }\ngrid = { nodes = [1.0] }\n");
    let out = run(&["transform", "--job", &job], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("need j < k"), "{err}");
    assert!(err.contains("\"exit_code\":2"), "{err}");
}

#[test]
fn mismatched_command_exits_two() {
    let job = jobs().join("gaussian_dual.toml");
    assert_eq!(run(&["transform", "--job", job.to_str().unwrap()], &[]).status.code(), Some(2));
}

#[test]
fn divergence_exits_three() {
    let job = write_job(
        "div.toml",
        "model = \"euclidean_affine\"\nparams = { n = 4, j = 0, k = 2 }\nprofile = { family = \"power\", p = 1.5 }\ngrid = { nodes = [1.0] }\n",
    );
    assert_eq!(run(&["transform", "--job", &job], &[]).status.code(), Some(3));
}

#[test]
fn monte_carlo_failure_exits_four() {
    // A small bump is hit by too few of the kernel samples: one draw
    // dominates the second moment.
    let job = write_job(
        "narrow.toml",
        "params = { n = 3, j = 0, k = 1 }\nm = 1\nprofile = { family = \"bump\", a = 0.5 }\ngrid = { nodes = [0.0] }\nmc = { seed = 1, n_samples = 200000 }\n",
    );
    let out = run(&["chain", "--job", &job], &[]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_passes_every_identity() {
    let job = jobs().join("verify.toml");
    let path = scratch("verify.json");
    let out = run(&["verify", "--job", job.to_str().unwrap(), "--format", "json", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r[4] == serde_json::Value::Bool(true)));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let job = jobs().join("hyper_duality.toml");
    let mut outputs = Vec::new();
    for threads in ["1", "1", "3"] {
        let out = run(&["mc-duality", "--job", job.to_str().unwrap(), "--samples", "20000"], &[("GEORADON_THREADS", threads)]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let other = run(&["mc-duality", "--job", job.to_str().unwrap(), "--samples", "20000", "--seed", "8"], &[]);
    assert_ne!(outputs[0], other.stdout);
}

#[test]
fn bad_thread_count_is_a_validation_error() {
    let job = jobs().join("verify.toml");
    assert_eq!(run(&["verify", "--job", job.to_str().unwrap()], &[("GEORADON_THREADS", "zero")]).status.code(), Some(2));
}
