use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

use codescope::claims::{ClaimResult, Verdict};
use codescope::cli::verify_exit_code;
use codescope::format::{parse_code, write_code};

fn codescope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codescope")).args(args).env_remove("CODESCOPE_CAP").output().unwrap()
}

fn stdout_json(args: &[&str]) -> Value {
    let out = codescope(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    let analyze = jsonschema::Resource::from_contents(schema("analyze_report.schema.json")).unwrap();
    jsonschema::options()
        .with_resource("https://codescope.invalid/analyze_report.schema.json", analyze)
        .build(&schema(name))
        .unwrap()
}

fn assert_valid(schema_name: &str, value: &Value) {
    let v = validator(schema_name);
    let errors: Vec<String> = v.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn construct_to(dir: &Path, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(format!("{}.code", args.join("_").replace([':', '-'], "_")));
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = codescope(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["repetition", "--q", "3", "--n", "4"],
        &["dual-repetition", "--q", "4", "--n", "5"],
        &["hamming", "--q", "8"],
        &["simplex", "--q", "5"],
        &["ders", "--q", "7", "--k", "3"],
        &["hyperoval", "--q", "8"],
        &["selfdual-2-1-2", "--q", "13"],
        &["selfdual-4-2-3", "--q", "9"],
        &["named:selfdual_4_2_3_4"],
        &["paper:rs_5_2_4_5"],
    ];
    for args in cases {
        let path = construct_to(dir.path(), args);
        let text = std::fs::read_to_string(&path).unwrap();
        let code = parse_code(&text).unwrap();
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(write_code(&code, None), body, "{args:?}");
    }
}

#[test]
fn analyze_known_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["named:code_4_2_3_5"]);
    let r = stdout_json(&["analyze", path.to_str().unwrap(), "--json", "-"]);
    assert_eq!(r["flags"]["is_cr"]["value"], json!(true));
    assert_eq!(r["flags"]["is_self_dual"]["value"], json!(false));
    assert_eq!(r["weight_distribution"], json!([1, 0, 0, 16, 8]));
    assert_valid("analyze_report.schema.json", &r);

    let path = construct_to(dir.path(), &["hamming", "--q", "3"]);
    let r = stdout_json(&["analyze", path.to_str().unwrap(), "--json", "-", "--full-coset-table"]);
    assert_eq!(r["flags"]["is_perfect"]["value"], json!(true));
    assert_eq!(r["s"], json!(1));
    assert!(r["coset_summary"]["groups"].is_array());
    assert_valid("analyze_report.schema.json", &r);
}

#[test]
fn analyze_reports_witnesses_and_engines() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["repetition", "--q", "3", "--n", "4"]);
    let r = stdout_json(&["analyze", path.to_str().unwrap(), "--json", "-"]);
    assert_eq!(r["flags"]["is_cr"]["value"], json!(false));
    let w = r["witnesses"]["not_cr"].as_array().unwrap();
    assert_eq!(w.len(), 2);
    assert_ne!(w[0]["distribution"], w[1]["distribution"]);
    assert_valid("analyze_report.schema.json", &r);

    let path = construct_to(dir.path(), &["hyperoval", "--q", "4"]);
    let a = stdout_json(&["analyze", path.to_str().unwrap(), "--json", "-", "--engine", "primal"]);
    let b = stdout_json(&["analyze", path.to_str().unwrap(), "--json", "-", "--engine", "dual-character"]);
    assert_eq!(a["coset_summary"]["engine"], json!("primal"));
    assert_eq!(b["coset_summary"]["engine"], json!("dual-character"));
    assert_eq!(a["coset_summary"]["leader_weights"], b["coset_summary"]["leader_weights"]);
    assert_eq!(a["flags"], b["flags"]);
}

#[test]
fn verify_c14_reports_both_arguments() {
    let r = stdout_json(&["verify", "--claims", "C14", "--json", "-"]);
    let c = &r[0];
    assert_eq!(c["verdict"], json!("verified"));
    assert_eq!(c["witness"]["search"]["[6,2,5]_4"], json!(0));
    assert_eq!(c["witness"]["counting"]["a_5"], json!("18"));
    assert_eq!(c["witness"]["counting"]["codewords"], json!(16));
    assert_valid("claims_report.schema.json", &r);
}

#[test]
fn classify_report_validates() {
    let r = stdout_json(&["classify", "--q", "5", "--n", "5", "--k", "2", "--json", "-"]);
    assert_eq!(r["class_count"], json!(1));
    assert_valid("classify_report.schema.json", &r);
    let r = stdout_json(&["classify", "--q", "4", "--n", "6", "--k", "3", "--semilinear", "--json", "-"]);
    assert_eq!(r["equivalence"], json!("semilinear"));
    assert_valid("classify_report.schema.json", &r);
}

#[test]
fn selfdual_search_finds_codes() {
    let out = codescope(&["selfdual-search", "--q", "5", "--n", "6", "--k", "3", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let count: usize = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!(count > 0, "{text}");
    let out = codescope(&["selfdual-search", "--q", "5", "--n", "4", "--k", "2", "--d", "3"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("0 "));
}

#[test]
fn exit_codes() {
    assert_eq!(codescope(&["bogus"]).status.code(), Some(1));
    assert_eq!(codescope(&["verify", "--claims", "C99"]).status.code(), Some(1));
    assert_eq!(codescope(&["construct", "nonsense", "--q", "4"]).status.code(), Some(1));
    assert_eq!(codescope(&["construct", "selfdual-2-1-2", "--q", "3"]).status.code(), Some(1));
    assert_eq!(codescope(&["analyze", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(codescope(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["hamming", "--q", "8"]);
    let out = Command::new(env!("CARGO_BIN_EXE_codescope"))
        .args(["analyze", path.to_str().unwrap()])
        .env("CODESCOPE_CAP", "enumeration=10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.path().join("bad.code");
    std::fs::write(&bad, "field 5 1\nn 3\nk 1\n1 2\n").unwrap();
    let out = codescope(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let result = |verdict| ClaimResult { claim_id: "C0", statement: "", verdict, witness: Value::Null, cost_ms: 0 };
    assert_eq!(verify_exit_code(&[result(Verdict::Verified), result(Verdict::SkippedCost)]), 0);
    assert_eq!(verify_exit_code(&[result(Verdict::Verified), result(Verdict::Refuted)]), 3);
}

fn without_cost(mut v: Value) -> Value {
    for c in v.as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("cost_ms");
    }
    v
}

#[test]
fn outputs_do_not_depend_on_workers() {
    let claims = "C4,C5,C9,C11,C13,C14,C17";
    let a = without_cost(stdout_json(&["--workers", "1", "verify", "--claims", claims, "--json", "-"]));
    let b = without_cost(stdout_json(&["--workers", "4", "verify", "--claims", claims, "--json", "-"]));
    assert_eq!(a, b);
    let again = without_cost(stdout_json(&["--workers", "4", "verify", "--claims", claims, "--json", "-"]));
    assert_eq!(b, again);

    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["ders", "--q", "8", "--k", "6"]);
    let p = path.to_str().unwrap();
    let a = stdout_json(&["--workers", "1", "analyze", p, "--json", "-", "--full-coset-table"]);
    let b = stdout_json(&["--workers", "4", "analyze", p, "--json", "-", "--full-coset-table"]);
    assert_eq!(a, b);

    let a =
        stdout_json(&["--workers", "1", "--seed", "7", "classify", "--q", "5", "--n", "6", "--k", "3", "--json", "-"]);
    let b =
        stdout_json(&["--workers", "4", "--seed", "7", "classify", "--q", "5", "--n", "6", "--k", "3", "--json", "-"]);
    assert_eq!(a, b);
}
