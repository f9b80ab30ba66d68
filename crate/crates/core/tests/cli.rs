use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ksforms");

fn ksforms(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("KILLING_SPINOR_CAP").output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn degree_one_example_passes_with_additional_solutions() {
    let o = ksforms(&["verify", "--n-plus", "3", "--n-minus", "0", "--eps", "1", "--degree", "1", "--suites", "all", "--points", "3", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["spec_version"], "1");
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("solutions/32ksf/")));
    assert!(names.windows(2).all(|w| w[0] < w[1]), "records are sorted");
    assert!(v["records"][0]["elapsed_ms"].is_null());
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "--n-plus", "2", "--eps", "-1", "--suites", "clifford,solutions", "--seed", "11", "--format", "json"];
    assert_eq!(ksforms(&args).stdout, ksforms(&args).stdout);
}

#[test]
fn timings_are_recorded_on_request() {
    let o = ksforms(&["verify", "--n-plus", "2", "--suites", "clifford", "--format", "json", "--timings"]);
    assert!(json(&o)["records"][0]["elapsed_ms"].is_u64());
}

#[test]
fn empty_suite_list_is_a_passing_report() {
    let o = ksforms(&["verify", "--suites", "", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["records"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--n-plus", "1"][..],
        &["verify", "--eps", "2"],
        &["verify", "--degree", "4"],
        &["verify", "--suites", "algebra,nope"],
        &["verify", "--format", "yaml"],
        &["explain", "nope"],
        &["frobnicate"],
    ] {
        assert_eq!(ksforms(args).status.code(), Some(2), "{args:?}");
    }
    let capped = Command::new(BIN).args(["verify", "--n-plus", "5"]).env("KILLING_SPINOR_CAP", "4").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn dimensions_rows_meet_bounds() {
    let o = ksforms(&["dimensions", "--n-plus", "2", "--n-minus", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        assert_eq!(r["rank"], r["bound"], "{r}");
    }
    let text = ksforms(&["dimensions", "--n-plus", "2", "--degree", "0"]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("family"));
}

#[test]
fn explain_accepts_keys_and_record_names() {
    let o = ksforms(&["explain", "clfclv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("(2p − n)Φ"));
    let o = ksforms(&["explain", "solutions/sksf-killing/p=1/sign=+"]);
    assert_eq!(o.status.code(), Some(0));
}
