use std::path::{Path, PathBuf};
use std::process::Command;

use fatcode::cli::{run_command, Outcome, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_PARSE};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[String]) -> Outcome {
    run_command(std::iter::once("fatcode".to_string()).chain(args.iter().cloned()))
}

/// Resolves `*.fps` arguments against the fixture directory.
fn resolve(args: &[Value]) -> Vec<String> {
    args.iter()
        .map(|a| {
            let s = a.as_str().unwrap();
            if s.ends_with(".fps") {
                fixtures().join(s).to_string_lossy().into_owned()
            } else {
                s.to_string()
            }
        })
        .collect()
}

/// Every key of `expected` is present in `actual` with a matching value;
/// arrays must match elementwise and in length.
fn matches(actual: &Value, expected: &Value) -> bool {
    match (actual, expected) {
        (Value::Object(a), Value::Object(e)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|x| matches(x, v))),
        (Value::Array(a), Value::Array(e)) => a.len() == e.len() && a.iter().zip(e).all(|(x, y)| matches(x, y)),
        _ => actual == expected,
    }
}

fn schema() -> jsonschema::Validator {
    let text =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn document_json(out: &Outcome) -> Value {
    serde_json::to_value(out.document.as_ref().expect("document")).unwrap()
}

#[test]
fn golden_fixture_cases() {
    let text = std::fs::read_to_string(fixtures().join("expected.json")).unwrap();
    let cases: Value = serde_json::from_str(&text).unwrap();
    let validator = schema();
    for case in cases["cases"].as_array().unwrap() {
        let mut args = resolve(case["args"].as_array().unwrap());
        args.push("--json".into());
        let out = run(&args);
        let exit = case["exit"].as_i64().unwrap() as i32;
        assert_eq!(out.code, exit, "{args:?}: {}", out.stderr);
        if exit != EXIT_OK {
            assert!(
                out.stderr.contains("line"),
                "{args:?}: diagnostics lack a line number: {}",
                out.stderr
            );
            continue;
        }
        let doc = document_json(&out);
        assert!(validator.is_valid(&doc), "{args:?}: schema violation");
        if let Some(expected) = case.get("results") {
            assert!(
                matches(&doc["results"], expected),
                "{args:?}: {} vs {expected}",
                doc["results"]
            );
        }
        if let Some(expected) = case.get("reports") {
            let got = doc["reports"].as_array().unwrap();
            for e in expected.as_array().unwrap() {
                assert!(got.iter().any(|r| matches(r, e)), "{args:?}: no report matches {e}");
            }
        }
    }
}

#[test]
fn json_validates_for_every_command_and_fixture() {
    let validator = schema();
    let commands: &[&[&str]] = &[
        &["matrix"],
        &["distance"],
        &["alpha"],
        &["hilbert"],
        &["socle"],
        &["separators"],
        &["vdistance", "--degree", "1"],
        &["survey"],
    ];
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "fps"))
        .collect();
    files.sort();
    let mut validated = 0;
    for file in &files {
        let name = file.file_name().unwrap().to_string_lossy().into_owned();
        // the heaviest table rows are covered by the golden cases
        let heavy = ["m5", "m6", "m7"].iter().any(|m| name.contains(m));
        for cmd in commands {
            if heavy && cmd[0] != "matrix" && cmd[0] != "distance" {
                continue;
            }
            let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
            args.push(file.to_string_lossy().into_owned());
            args.push("--json".into());
            let out = run(&args);
            if out.code == EXIT_OK || out.code == EXIT_COUNTEREXAMPLE {
                let doc = document_json(&out);
                assert!(validator.is_valid(&doc), "{args:?}");
                let printed: Value = serde_json::from_str(&out.stdout).unwrap();
                assert_eq!(printed, doc);
                validated += 1;
            } else {
                // rational-only commands on GF(2) schemes, Veronese distance on fat schemes
                assert_eq!(out.code, 1, "{args:?}: {}", out.stderr);
            }
        }
    }
    assert!(validated > 60, "only {validated} documents validated");
}

fn without_timing(mut doc: Value) -> Value {
    doc.as_object_mut().unwrap().remove("timing");
    doc
}

#[test]
fn identical_seeds_give_identical_reports() {
    let file = fixtures().join("attained2_m2.fps").to_string_lossy().into_owned();
    for args in [
        vec![
            "survey".to_string(),
            file.clone(),
            "--seed".into(),
            "11".into(),
            "--json".into(),
        ],
        vec![
            "ci".into(),
            "--degrees".into(),
            "2,3".into(),
            "--seed".into(),
            "5".into(),
            "--json".into(),
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        let mut threaded = args.clone();
        threaded.extend(["--threads".to_string(), "3".to_string()]);
        let c = run(&threaded);
        let strip = |o: &Outcome| without_timing(document_json(o)).to_string();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(strip(&a), strip(&c));
    }
}

#[test]
fn different_linear_forms_give_the_same_socle() {
    let file = fixtures().join("attained1_m3.fps").to_string_lossy().into_owned();
    let dims: Vec<Value> = (0..5)
        .map(|seed| {
            let out = run(&[
                "socle".into(),
                file.clone(),
                "--seed".into(),
                seed.to_string(),
                "--json".into(),
            ]);
            let doc = document_json(&out);
            doc["results"]["socle_dims"].clone()
        })
        .collect();
    assert!(dims.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn binary_exit_codes_and_output() {
    let exe = env!("CARGO_BIN_EXE_fatcode");
    let out = Command::new(exe)
        .args(["distance", fixtures().join("example00.fps").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("d(Z) = 1"));

    let out = Command::new(exe)
        .args(["alpha", fixtures().join("invalid/nonprime.fps").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = Command::new(exe)
        .args(["socle", fixtures().join("z1_gf2.fps").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn merge_duplicates_flag() {
    let file = fixtures().join("invalid/duplicate.fps").to_string_lossy().into_owned();
    assert_eq!(run(&["alpha".into(), file.clone()]).code, EXIT_PARSE);
    let out = run(&["matrix".into(), file, "--merge-duplicates".into(), "--json".into()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(
        document_json(&out)["results"]["block_multiplicities"],
        serde_json::json!([3, 1, 1])
    );
}
