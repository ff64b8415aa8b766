//! End-to-end checks of the binary: exit codes, output determinism, and
//! schema conformance of every verdict-like JSON object.

use std::path::Path;
use std::process::Command;

use regex::Regex;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ree-f4"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("verdict.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file in the repository root");
    serde_json::from_str(&text).expect("schema parses")
}

/// Just enough of draft-07 for verdict.schema.json: type, required,
/// properties, additionalProperties, enum, pattern, minLength, minItems,
/// items, minimum.
fn validate(schema: &Value, instance: &Value, path: &str, errs: &mut Vec<String>) {
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "integer" => instance.is_i64() || instance.is_u64(),
            "number" => instance.is_number(),
            "boolean" => instance.is_boolean(),
            other => panic!("unhandled type keyword {other}"),
        };
        if !ok {
            errs.push(format!("{path}: expected type {ty}"));
            return;
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().expect("required entries are strings");
            if instance.get(key).is_none() {
                errs.push(format!("{path}: missing required field {key}"));
            }
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            errs.push(format!("{path}: {instance} not in enum"));
        }
    }
    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        let re = Regex::new(pattern).expect("pattern compiles");
        match instance.as_str() {
            Some(s) if re.is_match(s) => {}
            _ => errs.push(format!("{path}: {instance} fails pattern {pattern}")),
        }
    }
    if let Some(min) = schema.get("minLength").and_then(Value::as_u64) {
        if let Some(s) = instance.as_str() {
            if (s.chars().count() as u64) < min {
                errs.push(format!("{path}: shorter than minLength {min}"));
            }
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = instance.as_i64() {
            if n < min {
                errs.push(format!("{path}: {n} below minimum {min}"));
            }
        }
    }
    if let Some(obj) = instance.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, value) in obj {
            if let Some(sub) = props.and_then(|p| p.get(key)) {
                validate(sub, value, &format!("{path}/{key}"), errs);
            } else {
                match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        errs.push(format!("{path}: unexpected field {key}"))
                    }
                    Some(sub @ Value::Object(_)) => {
                        validate(sub, value, &format!("{path}/{key}"), errs)
                    }
                    _ => {}
                }
            }
        }
    }
    if let Some(arr) = instance.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                errs.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, value) in arr.iter().enumerate() {
                validate(items, value, &format!("{path}/{i}"), errs);
            }
        }
    }
}

fn assert_valid_verdict(stdout: &str) -> Value {
    let value: Value = serde_json::from_str(stdout).expect("stdout is one JSON object");
    let mut errs = Vec::new();
    validate(&schema(), &value, "$", &mut errs);
    assert!(errs.is_empty(), "schema violations: {errs:?}\nin: {stdout}");
    value
}

#[test]
fn digits_example_round_trips() {
    let (code, out, _) = run(&["digits", "--r", "3", "--weight", "0,0,0,3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["digits"], "0,0,0,1;0,0,0,0;0,0,0,1");

    let (code, out, _) = run(&["assemble", "--digits", "0,0,0,1;0,0,0,0;0,0,0,1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weight"], "0,0,0,3");
}

#[test]
fn gamma_count_is_frozen() {
    let (code, out, _) = run(&["gamma", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(out, "445\n");

    let (code, out, _) = run(&["restricted", "--r", "3", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(out, "64\n");
}

#[test]
fn character_tsv_is_the_documented_dump() {
    let (code, out, _) = run(&["character", "--weight", "0,0,0,1", "--tsv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,0,0,0\t2\n0,0,0,1\t1\n");
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["gamma"],
        vec!["sections", "--r", "19"],
        vec!["tensor", "--lambda", "0,0,0,1", "--mu", "0,0,0,1"],
        vec!["verdict-pair", "--r", "21", "--lambda", "0,0,0,1", "--mu", "0,0,0,0"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "nondeterministic output for {args:?}");
    }
}

#[test]
fn exit_codes_cover_the_contract() {
    // 0: success.
    assert_eq!(run(&["dim", "--weight", "0,0,0,1"]).0, 0);
    // 1: usage and parse errors.
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["dim", "--weight", "1,2,3"]).0, 1);
    assert_eq!(run(&["dim"]).0, 1);
    // 2: hypothesis violations.
    assert_eq!(run(&["verdict-selfext", "--r", "19", "--weight", "1024,0,0,0"]).0, 2);
    assert_eq!(run(&["verdict-pair", "--r", "19", "--lambda", "0,0,0,1", "--mu", "0,0,0,0"]).0, 2);
    assert_eq!(run(&["audit-prop34", "--r", "19", "--t", "6"]).0, 2);
    // 3: Unknown under --strict; without it the same call exits 0.
    assert_eq!(run(&["verdict-selfext", "--r", "17", "--weight", "0,0,0,1", "--strict"]).0, 3);
    assert_eq!(run(&["verdict-selfext", "--r", "17", "--weight", "0,0,0,1"]).0, 0);
    // 4: self-test failure on the corrupted orientation.
    assert_eq!(run(&["selftest", "--corrupt-tau"]).0, 4);
    assert_eq!(run(&["selftest"]).0, 0);
    // 0: help and version.
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn verdicts_validate_against_the_schema() {
    let verdict_calls: Vec<Vec<&str>> = vec![
        vec!["verdict-selfext", "--r", "19", "--weight", "0,0,0,0"],
        vec!["verdict-selfext", "--r", "17", "--weight", "0,0,0,1"],
        vec!["verdict-pair", "--r", "21", "--lambda", "0,0,0,1", "--mu", "0,0,0,0"],
        vec!["verdict-cor35", "--r", "19", "--t", "5", "--lambda", "31,31,31,31", "--mu", "0,0,0,0"],
        vec!["check-lemma33", "--r", "19", "--lambda", "0,0,0,0", "--mu", "0,0,0,0", "--nu", "1,0,0,0"],
        vec!["check-lemma33", "--r", "19", "--lambda", "0,0,0,0", "--mu", "0,0,0,0", "--nu", "512,0,0,0"],
        vec!["audit-prop34", "--r", "19", "--t", "5"],
        vec!["audit-prop34", "--r", "19", "--t", "4"],
        vec!["summands", "--r", "19", "--t", "5", "--lambda", "0,0,0,32", "--mu", "0,0,0,0"],
        vec!["linkage", "--lambda", "0,0,0,0", "--mu", "1,0,0,0"],
        // Hypothesis-violation envelopes share the shape.
        vec!["verdict-selfext", "--r", "19", "--weight", "1024,0,0,0"],
        vec!["verdict-pair", "--r", "20", "--lambda", "0,0,0,1", "--mu", "0,0,0,0"],
        vec!["digits", "--r", "4", "--weight", "0,0,0,1"],
    ];
    for args in verdict_calls {
        let (_, out, _) = run(&args);
        assert_valid_verdict(&out);
    }
}

#[test]
fn selfext_example_is_certified_zero() {
    let (code, out, _) = run(&["verdict-selfext", "--r", "19", "--weight", "0,0,0,0"]);
    assert_eq!(code, 0);
    let v = assert_valid_verdict(&out);
    assert_eq!(v["outcome"], "CertifiedZero");
    assert_eq!(v["inputs"]["r"], "19");
}

#[test]
fn pair_verdict_reports_the_rotation() {
    let (code, out, _) = run(&["verdict-pair", "--r", "21", "--lambda", "0,0,0,1", "--mu", "0,0,0,0"]);
    assert_eq!(code, 0);
    let v = assert_valid_verdict(&out);
    assert_eq!(v["outcome"], "ReducedToAlgebraicGroup");
    assert_eq!(v["n"], 11);
    assert_eq!(v["lambda_tilde"], "32,0,0,0");
}

#[test]
fn selftest_lists_named_checks() {
    let (code, out, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    let items = v["items"].as_array().unwrap();
    assert!(items.len() >= 6, "expected at least 6 named checks");
    for item in items {
        assert!(item["name"].as_str().unwrap().len() > 1);
        assert_eq!(item["pass"], true);
    }
}
