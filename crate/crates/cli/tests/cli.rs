use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn skeinforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeinforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skeinforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn det_of_trefoil() {
    let out = skeinforge(&["det", &fixture("trefoil.pd")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["det"], 3);
    assert_eq!(v["kauffman_det"], 3);
    assert_eq!(v["components"], 1);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [vec!["det", "FIX:8_20.pd"], vec!["hfk", "FIX:trefoil.grid"], vec!["verify-paper"]] {
        let args: Vec<String> = args.iter().map(|a| a.strip_prefix("FIX:").map_or(a.to_string(), fixture)).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(skeinforge(&args).stdout, skeinforge(&args).stdout, "{args:?}");
    }
}

#[test]
fn keys_are_sorted() {
    let out = String::from_utf8(skeinforge(&["det", &fixture("hopf.pd")]).stdout).unwrap();
    let keys: Vec<&str> = out.lines().filter_map(|l| l.trim().split('"').nth(1)).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn resolve_trefoil() {
    let out = skeinforge(&["resolve", &fixture("trefoil.pd"), "--crossing", "0", "--choice", "one", "--simplify"]);
    let v = json(&out);
    assert_eq!((v["components"].as_u64(), v["det"].as_u64()), (Some(2), Some(2)));
    let out = skeinforge(&["resolve", &fixture("trefoil.pd"), "--crossing", "0", "--choice", "zero", "--simplify"]);
    let v = json(&out);
    assert_eq!((v["crossings"].as_u64(), v["det"].as_u64()), (Some(0), Some(1)));
    let out = skeinforge(&["resolve", &fixture("trefoil.pd"), "--crossing", "9", "--choice", "zero"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn skein_check_reports_and_sets_exit_status() {
    let out = skeinforge(&["skein", "check", "--L", "3,1", "--L0", "4,2", "--L1", "1,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["normalized"], serde_json::json!([6, 4, 2]));
    assert!(v["note"].as_str().unwrap().contains("not computed"));

    let out = skeinforge(&["skein", "check", "--L", "9,1", "--L0", "1,1", "--L1", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    let out = skeinforge(&["skein", "check", "--L", "1,1", "--L0", "1,1", "--L1", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificate_round_trip_and_tampering() {
    let out = skeinforge(&["qa", "certify", &fixture("8_20.pd")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["status"], "certified");
    let path = scratch("cert.json", &serde_json::to_string(&v).unwrap());
    let out = skeinforge(&["qa", "verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["valid"], true);

    let mut cert = v["certificate"].clone();
    cert["det_l"] = Value::from(cert["det_l"].as_u64().unwrap() + 2);
    let path = scratch("tampered.json", &serde_json::to_string(&cert).unwrap());
    let out = skeinforge(&["qa", "verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["path"], serde_json::json!(["root"]));
}

#[test]
fn certify_unknown_for_8_19() {
    let v = json(&skeinforge(&["qa", "certify", &fixture("8_19.pd"), "--budget", "2000"]));
    assert_eq!(v["status"], "unknown");
}

#[test]
fn hfk_and_grid_limit() {
    let v = json(&skeinforge(&["hfk", &fixture("figure_eight.grid")]));
    assert_eq!(v["hfk_rank"], 5);
    assert_eq!(v["det"], 5);
    assert_eq!(v["corollary"]["identity"], true);

    let out = Command::new(env!("CARGO_BIN_EXE_skeinforge"))
        .args(["hfk", &fixture("figure_eight.grid")])
        .env("SKEINFORGE_MAX_GRID", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5"));
}

#[test]
fn heegaard_build_and_validate() {
    let out = skeinforge(&["heegaard", "build", &fixture("hopf.pd"), "--mark", "1", "--mark", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["genus"], 3);
    assert_eq!(v["k"], 2);
    assert_eq!(v["punctures"], 6);
    let path = scratch("hopf.json", &serde_json::to_string(&v).unwrap());
    let out = skeinforge(&["heegaard", "validate", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["counts"]["alphas"], 5);

    let mut bad = v;
    bad["punctures"] = Value::from(5);
    let path = scratch("bad.json", &serde_json::to_string(&bad).unwrap());
    let out = skeinforge(&["heegaard", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["violations"].to_string().contains("2k+2"));

    let out = skeinforge(&["heegaard", "build", &fixture("clasp.pd"), "--replace", "0", "--variant", "delta"]);
    let v = json(&out);
    assert_eq!(v["triad"]["gamma_delta"], serde_json::json!(["B", "V"]));
    assert_eq!(v["beta_curves"].as_array().unwrap().len(), 3);
}

#[test]
fn homalg_example_triangle() {
    let example = r#"{
        "complexes": [{"dim": 2, "d": [[0,0],[0,0]]}, {"dim": 2, "d": [[0,0],[0,0]]}, {"dim": 2, "d": [[0,0],[0,0]]}],
        "maps": [[[0,0],[1,1]], [[1,0],[1,0]], [[1,1],[1,1]]],
        "homotopies": [[[0,0],[0,0]], [[0,0],[0,0]], [[0,0],[0,0]]]
    }"#;
    let path = scratch("example.json", example);
    let out = skeinforge(&["homalg", "check-triangle", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exact"], true);
    assert_eq!(v["exactness"]["homology_ranks"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["hypotheses"]["condition_one"], true);
    assert_eq!(v["hypotheses"]["condition_two"], false);
}

#[test]
fn verify_paper_passes_on_bundled_fixtures() {
    let out = skeinforge(&["verify-paper"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert!(v["criteria"][0].get("elapsed_ms").is_none());

    let out = skeinforge(&["verify-paper", "--fixtures", &fixture(""), "--human", "--timings"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(text.contains(" ms)"));
}

#[test]
fn verify_paper_fails_when_grids_are_capped() {
    let out = Command::new(env!("CARGO_BIN_EXE_skeinforge"))
        .arg("verify-paper")
        .env("SKEINFORGE_MAX_GRID", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn fixtures_list_and_check() {
    let v = json(&skeinforge(&["fixtures", "list"]));
    assert!(v["fixtures"].as_array().unwrap().len() >= 12);
    let out = skeinforge(&["fixtures", "check", "--dir", &fixture("")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["consistent"], true);
}

#[test]
fn missing_file_is_an_error() {
    let out = skeinforge(&["det", "/nonexistent/file.pd"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}
