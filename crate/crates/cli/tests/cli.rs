mod common;

use common::{assert_valid, json_of, qaffine, schema, validate};
use serde_json::json;

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn drinfeld_strings_example() {
    let out = qaffine(&["drinfeld", "--lambda", "1,0", "--n", "2", "--strings"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let s = &v["result"]["strings"];
    assert_eq!(s["blocks"], json!([[1, 1], [0, 1]]));
    assert_eq!(s["centers"], json!(["q^-6", "1"]));
    assert_eq!(s["factors"][0]["coefficients"], json!(["1", "-q^-5"]));
    assert_eq!(s["factors"][1]["coefficients"], json!(["1", "-q"]));
    assert_eq!(s["dimension"], json!(4));
}

#[test]
fn macdonald_two_box_example() {
    let out = qaffine(&["macdonald", "--lambda", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let terms = v["result"]["polynomial"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["partition"], json!([2]));
    assert_eq!(terms[0]["text"], json!("1"));
    assert_eq!(terms[1]["partition"], json!([1, 1]));
    // (1 - t)(1 + p)/(1 - pt), expanded
    assert_eq!(terms[1]["text"], json!("(p*t - p + t - 1)/(p*t - 1)"));
}

#[test]
fn char_verify_example() {
    let out = qaffine(&["char", "verify", "--sector", "0", "--order", "30", "--format", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("fermionic = bosonic = refined through q^30"));
}

#[test]
fn char_list_leading_dimensions() {
    let out = qaffine(&["char", "list", "--sector", "1", "--order", "4", "--kind", "bosonic"]);
    assert_eq!(json_of(&out)["result"]["coefficients"], json!(["2", "2", "6", "8", "14"]));
}

#[test]
fn hwv_closed_form_example() {
    let out = qaffine(&["hwv", "--lambda", "1", "--n", "1", "--cutoff", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let states = v["result"]["vector"]["states"].as_array().unwrap();
    assert_eq!(states.len(), 1);
    assert_eq!(states[0]["boson"], json!([1]));
    assert_eq!(states[0]["degree"], json!(1));
}

#[test]
fn hwv_verify_records_scalar() {
    let out = qaffine(&["hwv", "verify", "--n", "2", "--max-weight", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["result"]["checks"][0]["notes"][0], json!("scalar (-q^-1)*eps (eps^2 = -q)"));
}

#[test]
fn hwv_verify_detects_missing_swap() {
    let out = qaffine(&["hwv", "verify", "--n", "2", "--max-weight", "3", "--inject", "hwv-no-swap"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["error"]["kind"], json!("MismatchBeyondScalar"));
}

#[test]
fn reduced_suite_passes() {
    let out = qaffine(&["verify-all", "--order", "5", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["result"]["failed"], json!(0));
    let names: Vec<&str> =
        v["result"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 16);
}

#[test]
fn each_fault_fails_exactly_its_check() {
    let cases = [
        ("duality-no-swap", "duality"),
        ("hecke-inverse-g23", "hecke-relations"),
        ("affine-y2-swapped", "affine-hecke"),
        ("rbar-entry", "rs-ybe"),
        ("level0-no-prefactor", "level0"),
        ("fermionic-no-dim", "characters"),
        ("hwv-no-swap", "hwv-consistency"),
        ("fusion-eta", "fusion"),
    ];
    for (fault, check) in cases {
        let out = qaffine(&["verify-all", "--order", "5", "--n-max", "2", "--inject", fault]);
        assert_eq!(out.status.code(), Some(1), "{fault}");
        let v = json_of(&out);
        assert_valid(&v);
        let failed: Vec<&str> = v["result"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["status"] == "fail")
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert_eq!(failed, vec![check], "{fault}");
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["verify-all", "--order", "4", "--n-max", "2"][..],
        &["relations", "--n", "2", "--trials", "3", "--seed", "7"],
        &["hecke", "check", "--generators", "g", "--seed", "11"],
        &["drinfeld", "--lambda", "2,1", "--n", "3", "--strings", "--format", "csv"],
        &["macdonald", "--lambda", "2,1", "--format", "plain"],
    ] {
        let a = qaffine(args);
        let b = qaffine(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["verify-all", "--order", "4", "--n-max", "2"];
    let free = qaffine(&args);
    let capped = std::process::Command::new(env!("CARGO_BIN_EXE_qaffine"))
        .args(args)
        .env("QAFFINE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(free.stdout, capped.stdout);
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let cases: [(&[&str], &str); 7] = [
        (&["macdonald", "--lambda", "1,2", "--n", "2"], "--lambda"),
        (&["macdonald", "--lambda", "1,1,1", "--n", "2"], "--n"),
        (&["drinfeld", "--lambda", "x", "--n", "2"], "--lambda"),
        (&["char", "verify", "--sector", "2"], "--sector"),
        (&["hecke", "normalform", "--m", "3", "--n", "2"], "--m"),
        (&["ybe", "--inject", "fusion-eta"], "--inject"),
        (&["verify-all", "--n-max", "1"], "--n-max"),
    ];
    for (args, flag) in cases {
        let out = qaffine(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
    let out = qaffine(&["hwv", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qaffine(&["relations", "--inject", "no-such-fault"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_and_plain_formats() {
    let out = qaffine(&["drinfeld", "--lambda", "1,0", "--n", "2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("block,k,n,center,factor"));
    assert_eq!(lines.next(), Some("1,1,1,q^-6,1 - q^-5*u"));
    let out = qaffine(&["ybe", "--format", "plain"]);
    assert!(stdout(&out).starts_with("ybe: pass\n"));
}

#[test]
fn every_command_emits_schema_valid_json() {
    let runs: [&[&str]; 12] = [
        &["macdonald", "--lambda", "1,1", "--powersum"],
        &["macdonald", "--verify", "--n", "2", "--max-weight", "3"],
        &["hecke", "check", "--n", "2", "--generators", "affine", "--trials", "2"],
        &["hecke", "normalform", "--m", "1", "--n", "2"],
        &["hecke", "identity", "--n", "2", "--max-weight", "2"],
        &["drinfeld", "--lambda", "1", "--n", "2", "--shadow", "--irreducibility"],
        &["relations", "--n", "1", "--trials", "2"],
        &["char", "labels", "--sector", "0", "--max-degree", "3"],
        &["hwv", "omega", "--n", "1", "--cutoff", "3"],
        &["hwv", "fusion"],
        &["hwv", "independence", "--sector", "1", "--cutoff", "2"],
        &["ybe", "--matrix", "rbar", "--inject", "rbar-entry"],
    ];
    for args in runs {
        let out = qaffine(args);
        assert!(matches!(out.status.code(), Some(0 | 1)), "{args:?}");
        assert_valid(&json_of(&out));
    }
}

#[test]
fn validator_rejects_malformed_envelopes() {
    let bad = [
        json!({"command": "ybe", "status": "pass", "params": {}}),
        json!({"command": "ybe", "status": "fail", "params": {}}),
        json!({"command": "ybe", "status": "pass", "params": {}, "result": {}, "error": {"kind": "X", "message": "m"}}),
        json!({"command": "nope", "status": "pass", "params": {}, "result": {}}),
        json!({"command": "ybe", "status": "ok", "params": {}, "result": {}}),
        json!({"command": "verify-all", "status": "pass", "params": {"order": 1, "n_max": 2, "seed": 0, "inject": null}, "result": {"total": 1}}),
    ];
    for v in bad {
        let mut errors = Vec::new();
        validate(&schema(), &v, "", &mut errors);
        assert!(!errors.is_empty(), "accepted {v}");
    }
}
