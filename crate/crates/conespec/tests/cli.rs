//! End-to-end checks of the binary: exit-code contract, deterministic
//! output, format payload equality, and model-file round-trips through the
//! CLI itself.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conespec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conespec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// A long hyperbolic funnel: the spectral gap closes as the funnel grows,
/// so no positive gap can be certified — the canonical inconclusive input.
fn funnel_model_file() -> PathBuf {
    let path = temp_path("funnel.model");
    std::fs::write(
        &path,
        "n = 3\nK = -2\nspindle_length = 20\nouter_bc = natural\n\n[cap]\nrho = 1\nell = -1\nsection = sphere 1\n",
    )
    .unwrap();
    path
}

#[test]
fn exit_contract_pass_cases() {
    for args in [
        vec!["thresholds"],
        vec!["models"],
        vec!["verify", "--model", "round-sphere", "--n", "3", "--ell", "1", "--cells", "1500"],
        vec!["gap-bound", "--n", "6", "--kappa", "0", "--ell", "1", "--rho", "auto", "--K", "5"],
        vec!["hardy-check", "--model", "large-sphere-cone", "--R", "2", "--n", "3"],
        vec!["eig", "--model", "round-sphere", "--cells", "500"],
        vec!["ricci", "--model", "cone-RP2", "--cells", "16"],
        vec!["bochner-fuzz", "--count", "400", "--seed", "5"],
    ] {
        let out = run(&args);
        assert_eq!(
            exit_code(&out),
            0,
            "expected exit 0 for {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn exit_contract_failed_inequality() {
    // A deliberately shallow graded grid misses the 2% recovery target: the
    // accuracy check fails honestly.
    let out = run(&[
        "hardy-check",
        "--best-constant",
        "--n",
        "3",
        "--cells",
        "2000",
        "--depth",
        "1e-4",
    ]);
    assert_eq!(exit_code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"pass\": false"));
}

#[test]
fn exit_contract_usage_errors() {
    for args in [
        vec!["thresholds", "--bogus"],
        vec!["eig", "--model", "no-such-model"],
        vec!["verify", "--model", "round-sphere", "--n", "4"],
        vec!["hardy-check", "--model", "round-sphere", "--R", "2"],
        // κ below the admissibility threshold: the closed-form machinery
        // rejects the inputs.
        vec!["gap-bound", "--n", "3", "--kappa", "0.5", "--ell", "1", "--rho", "auto", "--K", "1"],
        vec!["ricci", "--grushin", "--n", "3", "--j", "1", "--alpha", "1", "--y", "1", "--measure", "lebesgue"],
        vec!["gap-bound", "--n", "3", "--K", "1", "--kappa", "1", "--ell", "1", "--rho", "pi"],
    ] {
        let out = run(&args);
        assert_eq!(
            exit_code(&out),
            2,
            "expected exit 2 for {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn exit_contract_inconclusive() {
    let model = funnel_model_file();
    let out = run(&["eig", "--model", model.to_str().unwrap(), "--cells", "64"]);
    assert_eq!(exit_code(&out), 3);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"converged\": false"));
}

#[test]
fn exit_contract_io_errors() {
    let out = run(&["models", "--file", "/no/such/path.model"]);
    assert_eq!(exit_code(&out), 4);
    let out = run(&["thresholds", "--out", "/no/such/dir/report.json"]);
    assert_eq!(exit_code(&out), 4);
}

#[test]
fn deterministic_bytes() {
    for args in [
        vec!["thresholds"],
        vec!["verify", "--model", "round-sphere", "--cells", "800"],
        vec!["bochner-fuzz", "--count", "400", "--seed", "11"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(exit_code(&a), exit_code(&b));
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

/// Walk a JSON value collecting `path,rendered` rows the way the CSV format
/// does, so the two formats can be compared leaf by leaf.
fn flatten_json(value: &serde_json::Value, path: String, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let next = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten_json(v, next, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_json(v, format!("{path}[{i}]"), rows);
            }
        }
        serde_json::Value::Number(num) => {
            let text = if let Some(u) = num.as_u64() {
                format!("{u}")
            } else if let Some(i) = num.as_i64() {
                format!("{i}")
            } else {
                format!("{}", num.as_f64().unwrap())
            };
            rows.push((path, text));
        }
        serde_json::Value::Bool(b) => rows.push((path, format!("{b}"))),
        serde_json::Value::String(s) => rows.push((path, s.clone())),
        serde_json::Value::Null => rows.push((path, "null".to_string())),
    }
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let args = ["gap-bound", "--n", "4", "--kappa", "0.8", "--ell", "1", "--rho", "auto", "--K", "3"];
    let json_out = run(&[&args[..], &["--format", "json"]].concat());
    let csv_out = run(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(exit_code(&json_out), 0);
    assert_eq!(exit_code(&csv_out), 0);

    let json: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let mut rows = Vec::new();
    flatten_json(&json, String::new(), &mut rows);
    assert!(rows.iter().any(|(k, _)| k.starts_with("results.")));

    let csv_text = String::from_utf8(csv_out.stdout).unwrap();
    assert!(csv_text.starts_with("key,value\n"));
    for (key, value) in rows {
        // Quoted CSV fields only appear for strings with separators; every
        // numeric row must match byte for byte.
        let plain = format!("{key},{value}");
        let quoted = format!("{key},\"{value}\"");
        assert!(
            csv_text.lines().any(|l| l == plain || l == quoted),
            "CSV is missing row `{plain}`"
        );
    }
}

#[test]
fn model_files_roundtrip_through_cli() {
    let saved = temp_path("s2xs2.model");
    let out = run(&["models", "--name", "cone-S2xS2", "--save", saved.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let first = std::fs::read(&saved).unwrap();

    // Validate through the CLI, then save again and compare bytes.
    let out = run(&["models", "--file", saved.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let saved_again = temp_path("s2xs2-again.model");
    let out = run(&["models", "--name", "cone-S2xS2", "--save", saved_again.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(first, std::fs::read(&saved_again).unwrap());

    // The saved file is directly consumable by the analysis subcommands.
    let out = run(&["eig", "--model", saved.to_str().unwrap(), "--cells", "400"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn out_flag_matches_stdout() {
    let stdout_run = run(&["thresholds"]);
    let path = temp_path("thresholds.json");
    let file_run = run(&["thresholds", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&file_run), 0);
    assert_eq!(std::fs::read(&path).unwrap(), stdout_run.stdout);
}

#[test]
fn thresholds_json_contains_pinned_values() {
    let out = run(&["thresholds"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["1.264911", "1.154700", "1.069044"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn thread_cap_env_is_accepted() {
    let out = bin()
        .env("CONESPEC_THREADS", "2")
        .args(["verify", "--model", "round-sphere", "--cells", "600"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn rescale_maps_values_back() {
    let model = temp_path("steep.model");
    std::fs::write(
        &model,
        "n = 3\nK = 8\nspindle_length = 1.5707963267948966\nouter_bc = natural\n\n\
         [cap]\nrho = 0.7853981633974483\nell = 4\nsection = sphere 0.5\n",
    )
    .unwrap();
    let plain = run(&["eig", "--model", model.to_str().unwrap(), "--cells", "900"]);
    let rescaled = run(&["eig", "--model", model.to_str().unwrap(), "--cells", "900", "--rescale"]);
    assert_eq!(exit_code(&plain), 0);
    assert_eq!(exit_code(&rescaled), 0);
    let lam = |raw: &[u8]| -> f64 {
        let v: serde_json::Value = serde_json::from_slice(raw).unwrap();
        v["results"]["numeric"]["lambda1"].as_f64().unwrap()
    };
    let a = lam(&plain.stdout);
    let b = lam(&rescaled.stdout);
    assert!((a - b).abs() <= 1e-9 * a.abs(), "rescale changed λ₁: {a} vs {b}");
    assert!((a - 12.0).abs() <= 1e-3);
}
