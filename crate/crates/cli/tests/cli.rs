use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn kmotive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmotive"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = kmotive(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn descriptor(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

fn e8(u: &str) -> Value {
    json!({
        "type": "E8",
        "inner": true,
        "tits_classes": [],
        "rost_invariant": {"degree": 3, "nonzero_primes": []},
        "e8_u_invariant": u,
    })
}

#[test]
fn morava_mod_j_term_list() {
    let v = ok_json(&["fgl", "morava", "--p", "2", "--n", "1", "--degree", "3", "--mod-j"]);
    assert_eq!(
        v["terms"],
        json!([
            {"x": 1, "y": 0, "coeff": "1"},
            {"x": 0, "y": 1, "coeff": "1"},
            {"x": 1, "y": 1, "coeff": "v1"},
        ])
    );
    assert_eq!(v["matches_closed_form"], json!(true));
}

#[test]
fn witt_level_example() {
    let out = kmotive(&["witt", "level", "<<a1,a2>> + <<a3,a4>>"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"i_level\":2,\"split_heights\":[0]}\n"
    );
}

#[test]
fn e8_descriptor_pair() {
    let f = descriptor(&e8("nonzero-pure"));
    let path = f.path().to_str().unwrap();
    assert_eq!(
        ok_json(&["group", "split", "--file", path, "--height", "4"]),
        json!({"verdict": "NotSplit", "rule": "thm-main-4"})
    );
    assert_eq!(
        ok_json(&["group", "split", "--file", path, "--height", "2"]),
        json!({"verdict": "Split", "rule": "thm-main-3"})
    );
    let v = ok_json(&["group", "split", "--file", path, "--height", "3"]);
    assert_eq!(v["verdict"], "Undecided");
    assert!(v["unmet"].is_string());
}

#[test]
fn k0_query_on_outer_form() {
    let f = descriptor(&json!({"type": "A3", "inner": false, "tits_classes": [{"element": [0], "group": [4]}]}));
    let path = f.path().to_str().unwrap();
    let v = ok_json(&["group", "split", "--file", path, "--height", "0"]);
    assert_eq!(v, json!({"verdict": "NotSplit", "rule": "thm-main-1"}));
    let v = ok_json(&["group", "split", "--file", path, "--theory", "k0"]);
    assert_eq!(v["verdict"], "Undecided");
}

#[test]
fn descriptor_errors_name_the_key() {
    let f = descriptor(&json!({"type": "F4", "inner": true, "e8_u_invariant": "zero"}));
    let out = kmotive(&["group", "split", "--file", f.path().to_str().unwrap(), "--height", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "HypothesisViolation");
    assert!(err["detail"].as_str().unwrap().contains("e8_u_invariant"));

    let f = descriptor(&json!({"type": "E8", "inner": true, "colour": "red"}));
    let out = kmotive(&["group", "split", "--file", f.path().to_str().unwrap(), "--height", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn engine_errors_exit_one() {
    let out = kmotive(&["witt", "level", "<a1, b2>"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "ParseError");
    assert!(err["detail"].as_str().unwrap().contains("`b`"));

    let out = kmotive(&["fgl", "morava", "--p", "4", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InvalidPrime");

    let out = kmotive(&["rootsys", "weyl", "E7"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "GroupTooLarge");

    let out = kmotive(&["motive", "nu-check", "--p", "2", "--n", "2", "--dim", "4"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "DimensionMismatch");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["fgl", "morava", "--p", "2"],
        vec!["fgl", "morava", "--p", "2", "--n", "1", "--bogus"],
        vec!["fgl", "morava", "--p", "2", "--n", "1", "--degree", "65"],
        vec!["witt", "level", "<<a1>>", "--k", "25"],
        vec!["rootsys", "weyl", "E6", "--cap", "2000000"],
        vec!["fgl", "morava", "--p", "2", "--n", "6"],
        vec!["frobnicate"],
    ] {
        let out = kmotive(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn text_format_is_aligned() {
    let out = kmotive(&["--format", "text", "witt", "level", "<<a1,a2>> + <<a3,a4>>"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "i_level        2\nsplit_heights  [0]\n"
    );
}

#[test]
fn forms_from_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "<<a1,a2,a3>>").unwrap();
    let path = f.path().to_str().unwrap();
    let v = ok_json(&["witt", "e", "--n", "3", "--file", path]);
    assert_eq!(v["e"], json!([[1, 2, 3]]));
    let v = ok_json(&["witt", "strip", "--file", path]);
    assert_eq!(v["steps"], json!([{"degree": 3, "pfisters": ["<<a1,a2,a3>>"]}]));
    assert_eq!(v["reconstructs"], json!(true));
}

#[test]
fn witt_commands() {
    let v = ok_json(&["witt", "add", "<1, a1>", "<a1, a2>"]);
    assert_eq!(v["class"], json!(["1", "a2"]));
    let v = ok_json(&["witt", "mul", "<1, a1>", "<1, a2>"]);
    assert_eq!(v["class"], json!(["1", "a1", "a2", "a1*a2"]));
    let v = ok_json(&["witt", "pfister", "a1", "a2"]);
    assert_eq!(v["class"], json!(["1", "a1", "a2", "a1*a2"]));
    let v = ok_json(&["witt", "norm-form", "a1", "a2", "a3"]);
    assert_eq!(v["quadric"]["projective_dimension"], json!(3));
    let out = kmotive(&["witt", "pfister", "a1", "a1"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "DegeneratePfisterEntry");
}

#[test]
fn rootsys_and_tits() {
    let v = ok_json(&["rootsys", "weyl", "F4"]);
    assert_eq!(v["order"], json!(1152));
    let v = ok_json(&["rootsys", "fundamental-group", "E6"]);
    assert_eq!(v["orders"], json!([3]));
    let v = ok_json(&["rootsys", "rho", "B2"]);
    assert_eq!(v["weights"].as_array().unwrap().len(), 8);
    let v = ok_json(&["tits", "table", "A3"]);
    assert_eq!(v["table"][2]["class"]["element"], json!([3]));
    let v = ok_json(&["tits", "index", "A3", "--word", "1"]);
    assert_eq!(v["rho"], json!([-1, 1, 0]));
    assert_eq!(v["index"], json!(4));
    let v = ok_json(&["tits", "table", "E7", "--target", "2", "--images", "1"]);
    assert_eq!(v["table"].as_array().unwrap().len(), 7);
}

#[test]
fn motive_commands() {
    let v = ok_json(&["motive", "rost-split", "--p", "2", "--m", "3", "--n", "1"]);
    assert_eq!(v["verdict"], "TateDecomposition");
    assert_eq!(v["twists"], json!([0, 3]));
    let v = ok_json(&["motive", "ideal", "--p", "2", "--m", "3", "--chow"]);
    assert_eq!(v["specialization"]["image_index"], json!(2));
    let v = ok_json(&["motive", "milnor", "--dim", "3"]);
    assert_eq!(v["milnor_number"], json!(-6));
    let v = ok_json(&["motive", "nu-check", "--p", "2", "--n", "3", "--dim", "7"]);
    assert_eq!(v["nu_variety"], json!(true));
    let v = ok_json(&["motive", "euler", "--theory", "k0", "--dim", "5", "--cellular"]);
    assert_eq!(v, json!({"kind": "element", "value": "v1^5"}));
    let v = ok_json(&["motive", "euler", "--theory", "morava", "--p", "2", "--n", "2", "--dim", "4"]);
    assert_eq!(v, json!({"kind": "zero_mod_p"}));
}

#[test]
fn fgl_commands() {
    let v = ok_json(&["fgl", "p-series", "--p", "2", "--n", "2"]);
    assert_eq!(v["leading_mod_p"], json!({"degree": 4, "coeff": "v2"}));
    assert_eq!(v["height_certified"], json!(true));
    let v = ok_json(&["fgl", "check", "--law", "morava", "--p", "3", "--n", "1"]);
    assert_eq!(v["all"], json!(true));
    let v = ok_json(&["fgl", "bp-log", "--p", "2", "--degree", "4"]);
    assert_eq!(v["log"][1], json!({"degree": 2, "coeff": "1/2*v1"}));
    let v = ok_json(&["fgl", "mod-j", "--p", "5", "--n", "1"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["rootsys", "rho", "G2"];
    assert_eq!(kmotive(&args).stdout, kmotive(&args).stdout);
    let args = ["fgl", "bp", "--p", "3", "--degree", "9"];
    assert_eq!(kmotive(&args).stdout, kmotive(&args).stdout);
}

#[test]
fn help_and_version_exit_zero() {
    let out = kmotive(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("witt"));
    assert_eq!(kmotive(&["--version"]).status.code(), Some(0));
}

#[test]
fn library_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = kmotive_cli::run(["kmotive", "motive", "milnor", "--dim", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "{\"dim\":1,\"milnor_number\":2}\n");
}
