use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use trimul_core::format::inputs_to_json;
use trimul_core::{DisjointInputs, MatrixRng, Rational};

fn trimul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimul"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_inputs(dir: &Path, inputs: &DisjointInputs<Rational>) -> String {
    let path = dir.join("inputs.json");
    std::fs::write(
        &path,
        serde_json::to_string(&inputs_to_json(inputs)).unwrap(),
    )
    .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_corrected_exits_zero() {
    let out = trimul(&[
        "verify", "--n", "3", "--g", "1", "--q", "3", "--trials", "100", "--seed", "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["max_abs_residual"], "0");
    assert_eq!(report["h"], "2");
    assert_eq!(report["per_trial"].as_array().unwrap().len(), 100);
}

#[test]
fn verify_q_one_exits_one() {
    let out = trimul(&[
        "verify", "--n", "2", "--g", "1", "--q", "1", "--trials", "10", "--seed", "1",
    ]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn verify_fractional_g_and_default_q() {
    let out = trimul(&[
        "verify", "--n", "1", "--g", "1/2", "--trials", "5", "--seed", "4",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["q"], "1");
    assert_eq!(report["h"], "1/2");
}

#[test]
fn verify_usage_errors_exit_two() {
    assert_eq!(
        code(&trimul(&[
            "verify", "--n", "2", "--g", "2", "--q", "2", "--seed", "1"
        ])),
        2
    );
    assert_eq!(
        code(&trimul(&["verify", "--n", "2", "--g", "x", "--seed", "1"])),
        2
    );
    // Seeds are mandatory.
    assert_eq!(code(&trimul(&["verify", "--n", "2"])), 2);
    assert_eq!(
        code(&trimul(&[
            "verify", "--n", "2", "--seed", "1", "--trials", "0"
        ])),
        2
    );
}

#[test]
fn verify_writes_output_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = trimul(&[
        "verify",
        "--n",
        "2",
        "--trials",
        "3",
        "--seed",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["trials"], 3);
}

#[test]
fn multiply_corrected_check_passes() {
    let dir = TempDir::new().unwrap();
    let inputs = DisjointInputs::random(4, &mut MatrixRng::new(8), 20).unwrap();
    let input = write_inputs(dir.path(), &inputs);
    let out = trimul(&[
        "multiply",
        "--input",
        &input,
        "--mode",
        "corrected",
        "--check",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let result: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(result["mode"], "corrected");
    assert_eq!(result["mult_count"], 64 + 96 + 36 + 3 * 64);
    assert_eq!(result["C"]["name"], "C");
}

#[test]
fn multiply_raw_check_names_cross_products() {
    let out = trimul(&[
        "multiply", "--n", "3", "--seed", "5", "--mode", "raw", "--check",
    ]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    for expected in ["equals YU", "equals BX", "equals VA"] {
        assert!(err.contains(expected), "{err}");
    }
    let result: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(result["mult_count"], 27 + 54 + 27);
}

#[test]
fn multiply_zero_inputs_raw() {
    let dir = TempDir::new().unwrap();
    let input = write_inputs(dir.path(), &DisjointInputs::zeros(2).unwrap());
    let output = dir.path().join("out.json");
    let out = trimul(&[
        "multiply",
        "--input",
        &input,
        "--mode",
        "raw",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let result: Value = serde_json::from_str(&std::fs::read_to_string(output).unwrap()).unwrap();
    for name in ["C", "W", "Z"] {
        assert_eq!(result[name]["entries"], serde_json::json!([[0, 0], [0, 0]]));
    }
    assert_eq!(result["mult_count"], 50);
}

#[test]
fn multiply_malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"[{"n": 2, "name": "A", "entries": [[1, 2]]}]"#).unwrap();
    assert_eq!(
        code(&trimul(&["multiply", "--input", path.to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&trimul(&["multiply", "--input", "/nonexistent/file.json"])),
        2
    );
    assert_eq!(code(&trimul(&["multiply", "--n", "1", "--seed", "1"])), 2);
    assert_eq!(
        code(&trimul(&[
            "multiply", "--n", "3", "--seed", "1", "--mode", "fast"
        ])),
        2
    );
}

#[test]
fn multiply_is_reproducible() {
    let a = trimul(&[
        "multiply",
        "--n",
        "3",
        "--seed",
        "11",
        "--mode",
        "corrected",
    ]);
    let b = trimul(&[
        "multiply",
        "--n",
        "3",
        "--seed",
        "11",
        "--mode",
        "corrected",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn complexity_table_and_summary() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("table.csv");
    let summary = dir.path().join("summary.json");
    let out = trimul(&[
        "complexity",
        "--output",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let table = std::fs::read_to_string(csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,M_disjoint,omega_disjoint,M_single,omega_single"
    );
    assert_eq!(lines.clone().count(), (1000 - 4) / 2 + 1);
    let row48 = lines.find(|l| l.starts_with("48,")).unwrap();
    assert!(row48.starts_with("48,139968,2.77705"), "{row48}");
    assert!(row48.contains(",46592,2.77670"), "{row48}");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(summary).unwrap()).unwrap();
    assert_eq!(s["disjoint"]["m"], 48);
    assert_eq!(s["single"]["m"], 48);
}

#[test]
fn complexity_bad_range_exits_two() {
    assert_eq!(
        code(&trimul(&["complexity", "--m-lo", "10", "--m-hi", "8"])),
        2
    );
}

#[test]
fn bench_csv() {
    let out = trimul(&["bench", "--sizes", "2,8", "--reps", "2", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 6);
    let count =
        |n: &str, m: &str| rows.iter().find(|r| r[0] == n && r[1] == m).unwrap()[2].to_string();
    assert_eq!(count("8", "raw"), "968");
    assert_eq!(count("8", "naive"), "1536");
    assert_eq!(count("2", "raw"), "50");
    for r in &rows {
        assert!(r[4].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn bench_rejects_bad_sizes() {
    assert_eq!(code(&trimul(&["bench", "--sizes", "1", "--seed", "3"])), 2);
    assert_eq!(code(&trimul(&["bench", "--sizes", "4"])), 2);
}
