use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use d4rep::constructor::ProjectorQuadruple;
use d4rep::file::RepresentationFile;
use d4rep::linalg::Mat2;
use d4rep::Character;
use serde_json::Value;
use tempfile::TempDir;

const ALPHA: &str = "0.3,0.4,0.6,0.7";

fn d4rep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d4rep"))
        .args(args)
        .env_remove("D4REP_TOL")
        .output()
        .expect("binary runs")
}

fn d4rep_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_d4rep"))
        .args(args)
        .env_remove("D4REP_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn build_file(dir: &Path, alpha: &str, lambda: &str, chi: &str) -> String {
    let out = dir.join(format!("r_{lambda}_{chi}.json"));
    let out = out.to_str().unwrap().to_string();
    let o = d4rep(&[
        "build", "--alpha", alpha, "--lambda", lambda, "--chi", chi, "--out", &out,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn build_then_verify_passes() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), ALPHA, "0.35", "1.0471975512");
    let o = d4rep(&["verify", &f]);
    assert_eq!(code(&o), 0);
    let report = json(&o.stdout);
    assert_eq!(report["passed"], true);
    assert_eq!(report["stored_residual_drift"], 0.0);
    assert_eq!(report["p3_readings"]["satisfied_by"], "hermitian");
}

#[test]
fn equal_character_builds_equal_branch() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), "0.5,0.5,0.5,0.5", "0", "0.7853981634");
    let file = json(&std::fs::read(&f).unwrap());
    assert_eq!(file["branch"], "equal");
    assert_eq!(code(&d4rep(&["verify", &f])), 0);
}

#[test]
fn invalid_character_exits_1_with_json_diagnostic() {
    let o = d4rep(&["build", "--alpha", "0.2,0.3,0.4,0.5", "--lambda", "0.3", "--chi", "1"]);
    assert_eq!(code(&o), 1);
    let diag = json(&o.stderr);
    assert_eq!(diag["error"], "SumNotTwo");
    assert!(diag["message"].is_string());
}

#[test]
fn out_of_range_lambda_exits_1() {
    let o = d4rep(&["build", "--alpha", ALPHA, "--lambda", "0.6", "--chi", "1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o.stderr)["error"], "LambdaOutOfRange");
}

#[test]
fn unparsable_flags_exit_1() {
    assert_eq!(
        code(&d4rep(&["build", "--alpha", ALPHA, "--lambda", "x", "--chi", "1"])),
        1
    );
    assert_eq!(
        code(&d4rep(&[
            "build", "--alpha", "0.3,0.4", "--lambda", "0.3", "--chi", "1"
        ])),
        1
    );
    assert_eq!(code(&d4rep(&["frobnicate"])), 1);
    assert_eq!(code(&d4rep(&["--help"])), 0);
}

#[test]
fn raw_character_is_normalized() {
    let o = d4rep(&[
        "build",
        "--alpha-raw",
        "2,0.6,0.8,1.2,1.4",
        "--lambda",
        "0.35",
        "--chi",
        "-1",
    ]);
    assert_eq!(code(&o), 0);
    let file = json(&o.stdout);
    let alpha: Vec<f64> = serde_json::from_value(file["character"]["alpha"].clone()).unwrap();
    for (a, b) in alpha.iter().zip([0.3, 0.4, 0.6, 0.7]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn perturbed_entry_fails_verification() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), ALPHA, "0.35", "1.0");
    let mut file: RepresentationFile = RepresentationFile::from_json(&std::fs::read_to_string(&f).unwrap()).unwrap();
    file.projectors[1][0][1][0] += 1e-3;
    std::fs::write(&f, file.to_json()).unwrap();
    let o = d4rep(&["verify", &f]);
    assert_eq!(code(&o), 2);
    assert!(json(&o.stdout)["residuals"]["idempotent"].as_f64().unwrap() >= 1e-4);
}

#[test]
fn truncated_json_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), ALPHA, "0.35", "1.0");
    let text = std::fs::read_to_string(&f).unwrap();
    let o = d4rep_stdin(&["verify", "-"], &text.as_bytes()[..text.len() / 2]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o.stderr)["error"], "Parse");
    assert_eq!(code(&d4rep(&["verify", "/nonexistent/r.json"])), 3);
}

#[test]
fn tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), ALPHA, "0.35", "1.0");
    let o = Command::new(env!("CARGO_BIN_EXE_d4rep"))
        .args(["verify", &f])
        .env("D4REP_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o.stdout)["tolerance"], 1e-30);
    // the flag overrides the environment
    let o = Command::new(env!("CARGO_BIN_EXE_d4rep"))
        .args(["verify", &f, "--tol", "1e-8"])
        .env("D4REP_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn canon_recovers_build_parameters() {
    let dir = TempDir::new().unwrap();
    for (alpha, lambda, chi) in [(ALPHA, 0.35, -2.5), (ALPHA, 0.21, 0.3), ("0.5,0.5,0.5,0.5", 0.2, -1.2)] {
        let f = build_file(dir.path(), alpha, &lambda.to_string(), &chi.to_string());
        let o = d4rep(&["canon", &f]);
        assert_eq!(code(&o), 0);
        let form = json(&o.stdout);
        assert!((form["lambda"].as_f64().unwrap() - lambda).abs() <= 1e-9);
        assert!((form["chi"].as_f64().unwrap() - chi).abs() <= 1e-9);
        assert_eq!(form["printed_domain"], true);
    }
}

#[test]
fn pipeline_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let f = build_file(dir.path(), ALPHA, "0.41", "2.2");
    let first = json(&d4rep(&["canon", &f]).stdout);
    let (l, x) = (first["lambda"].as_f64().unwrap(), first["chi"].as_f64().unwrap());
    let g = build_file(dir.path(), ALPHA, &format!("{l:?}"), &format!("{x:?}"));
    assert_eq!(code(&d4rep(&["verify", &g])), 0);
    let second = json(&d4rep(&["canon", &g]).stdout);
    assert!((second["lambda"].as_f64().unwrap() - l).abs() <= 1e-9);
    assert!((second["chi"].as_f64().unwrap() - x).abs() <= 1e-9);
}

#[test]
fn canon_rejects_decomposable_and_invalid() {
    let dir = TempDir::new().unwrap();
    let c = Character::new([0.3, 0.4, 0.6, 0.7]).unwrap();
    let (e1, e2) = (Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0));
    let diagonal = ProjectorQuadruple::new([e1, e2, e2, e1], c);
    let f = dir.path().join("diag.json");
    std::fs::write(
        &f,
        RepresentationFile::from_quadruple(&diagonal, None).unwrap().to_json(),
    )
    .unwrap();
    let o = d4rep(&["canon", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o.stderr)["error"], "Decomposable");

    let mut broken = RepresentationFile::from_quadruple(&diagonal, None).unwrap();
    broken.projectors[0] = [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]];
    let o = d4rep_stdin(&["canon", "-"], broken.to_json().as_bytes());
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o.stderr)["error"], "NotAQuadruple");
}

#[test]
fn sweep_grid_and_format() {
    let o = d4rep(&["sweep", "--alpha", ALPHA, "--lambda-steps", "3", "--chi-steps", "4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha1,alpha2,alpha3,alpha4,lambda,chi,tr12,tr13,tr14,tr23,tr24,tr34,im_tr123,commutant_dim,max_residual"
    );
    let rows: Vec<Vec<f64>> = lines[1..]
        .iter()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.len() == 15 && r[14] <= 1e-10));
    assert!((rows[0][4] - 0.2).abs() < 1e-15);
    assert!((rows[11][4] - 0.5).abs() < 1e-15);
    // λ outer, χ inner
    assert_eq!(rows[0][4], rows[3][4]);
    assert!(rows[0][5] < rows[1][5]);

    let again = d4rep(&["sweep", "--alpha", ALPHA, "--lambda-steps", "3", "--chi-steps", "4"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn equal_sweep_is_right_open() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = d4rep(&[
        "sweep",
        "--alpha",
        "0.5,0.5,0.5,0.5",
        "--lambda-steps",
        "4",
        "--chi-steps",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(out).unwrap();
    let lambdas: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(lambdas, vec![0.0, 0.0, 0.125, 0.125, 0.25, 0.25, 0.375, 0.375]);
}

#[test]
fn oracle_passes_and_is_seed_stable() {
    for alpha in [ALPHA, "0.5,0.5,0.5,0.5"] {
        let a = d4rep(&["oracle", "--alpha", alpha, "--trials", "100", "--seed", "11"]);
        assert_eq!(code(&a), 0);
        let report = json(&a.stdout);
        assert_eq!(report["trials"], 100);
        assert_eq!(report["passes"], 100);
        let b = d4rep(&["oracle", "--alpha", alpha, "--trials", "100", "--seed", "11"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn oracle_with_no_trials() {
    let o = d4rep(&["oracle", "--alpha", ALPHA, "--trials", "0"]);
    assert_eq!(code(&o), 0);
    let report = json(&o.stdout);
    assert_eq!(report["trials"], 0);
    assert_eq!(report["passes"], 0);
}
