use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(args)
        .output()
        .expect("run forge")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("write scratch file");
    path
}

const GAP: [&str; 9] = ["--family", "gap", "--a", "1,2", "--d", "2,1", "--h", "1", "--n"];

fn gap_args<'a>(cmd: &'a str, n: &'a str) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(GAP);
    v.push(n);
    v
}

#[test]
fn apery_lists_three_vectors() {
    let out = forge(&gap_args("apery", "3"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!([[0, 0], [3, 3], [5, 4]]));
}

#[test]
fn apery_csv_and_text() {
    let mut args = vec!["--format", "csv"];
    args.extend(gap_args("apery", "3"));
    let out = forge(&args);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.contains("3,3"));

    let mut args = vec!["--format", "text"];
    args.extend(gap_args("qf", "3"));
    let out = forge(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}

#[test]
fn missing_ideal_file_is_a_usage_error() {
    let out = forge(&["gb", "--ideal", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = forge(&["apery", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
}

#[test]
fn tiny_cap_exits_with_three() {
    let mut args = vec!["--cap", "1"];
    args.extend(gap_args("apery", "4"));
    let out = forge(&args);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_claim_shape() {
    let out = forge(&["verify", "--claim", "thm-5.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 1);
    assert_eq!(claims[0]["id"], "thm-5.2");
    let instances = claims[0]["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 45);
    assert!(instances.iter().all(|i| i["status"] == "verified" && i["params"].is_object()));
}

#[test]
fn verify_refuted_claim_exits_with_one() {
    let out = forge(&["verify", "--claim", "cor-5.11"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["claims"][0]["instances"][0]["status"], "refuted");
}

#[test]
fn verify_list_and_unknown_claim() {
    let out = forge(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let ids = json(&out);
    assert_eq!(ids.as_array().unwrap().len(), 23);
    let out = forge(&["verify", "--claim", "thm-9.9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["verify", "--claim", "thm-5.3", "--claim", "order-axioms"];
    let a = forge(&args);
    let b = forge(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = forge(&gap_args("betti", "4"));
    let d = forge(&gap_args("betti", "4"));
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn json_output_ignores_worker_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_forge"))
            .args(["verify", "--claim", "thm-5.9", "--claim", "herzog"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("run forge")
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn betti_of_progression() {
    let out = forge(&gap_args("betti", "3"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["totals"], serde_json::json!([1, 3, 2]));

    let mut args = vec!["--format", "text"];
    args.extend(gap_args("betti", "3"));
    let text = String::from_utf8(forge(&args).stdout).unwrap();
    assert!(text.contains("total:"));
}

#[test]
fn en_complex_ranks() {
    let out = forge(&gap_args("en", "5"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ranks"], serde_json::json!([1, 10, 20, 15, 4]));
}

#[test]
fn toric_then_gb_round_trip() {
    let toric = forge(&gap_args("toric", "3"));
    assert_eq!(toric.status.code(), Some(0));
    let path = scratch("toric_n3.json", std::str::from_utf8(&toric.stdout).unwrap());
    let gb = forge(&["gb", "--ideal", path.to_str().unwrap()]);
    assert_eq!(gb.status.code(), Some(0));
    assert_eq!(json(&gb)["binomials"].as_array().unwrap().len(), 3);
    let initial = forge(&["initial", "--ideal", path.to_str().unwrap(), "--order-kind", "neg_degrevlex"]);
    assert_eq!(initial.status.code(), Some(0));
}

#[test]
fn join_and_semigroup_info() {
    let out = forge(&[
        "join", "--a", "1,2", "--d", "2,1", "--n", "2", "--a2", "2,3", "--d2", "1,1", "--n2", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["apery_size"], 4);
    let path = scratch("join22.json", &doc["semigroup"].to_string());
    let info = forge(&["semigroup", "--semigroup", path.to_str().unwrap()]);
    assert_eq!(info.status.code(), Some(0));
    let v = json(&info);
    assert_eq!(v["minimal"], true);
    assert_eq!(v["extremal_rays"].as_array().unwrap().len(), 4);
}

#[test]
fn gastinger_default_minors() {
    let out = forge(&gap_args("gastinger", "4"));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["quotient_dimension"], 4);
}

#[test]
fn csv_for_documents_is_rejected() {
    let mut args = vec!["--format", "csv"];
    args.extend(gap_args("en", "3"));
    assert_eq!(forge(&args).status.code(), Some(2));
}
