//! End-to-end tests against the compiled binary: documented examples,
//! reproducibility, config round-trips and exit codes.

use std::process::{Command, Output};

fn bl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bl"))
        .args(args)
        .env_remove("BL_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("json stdout")
}

#[test]
fn tensor_example_lists_both_constituents() {
    let out = bl(&["tensor", "--type", "GL3", "--lhs", "[1,0,0]", "--rhs", "[0,0,-1]"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["config"]["command"], "tensor");
    assert_eq!(v["config"]["parameters"]["type"], "GL3");
    let constituents = v["result"]["constituents"].as_array().unwrap();
    assert_eq!(constituents.len(), 2);
    assert_eq!(v["result"]["length"], 2);
    assert_eq!(v["result"]["dim"], "9");
}

#[test]
fn fernando_kac_example_is_the_generic_case() {
    let out = bl(&["fernando-kac", "--n", "3", "--p", "2", "--q", "1", "--h", "[1,-1,0]"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["case"], "k");
    assert_eq!(v["result"]["a"], 1);
    assert_eq!(v["result"]["b"], 1);
}

#[test]
fn stabilize_example_has_constant_length_eight() {
    let out = bl(&[
        "stabilize", "--family", "sl", "--a", "1", "--b", "1", "--c", "0", "--k", "2", "--n",
        "2..6", "--output", "tsv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    let header: Vec<&str> = body[0].split('\t').collect();
    assert_eq!(&header[..2], &["n", "length"]);
    assert_eq!(header.len(), 2 + 6);
    assert_eq!(body.len(), 1 + 5);
    for row in &body[1..] {
        assert_eq!(row.split('\t').nth(1), Some("8"));
    }

    let v = json(&bl(&[
        "stabilize", "--family", "sl", "--a", "1", "--b", "1", "--c", "0", "--k", "2", "--n",
        "2..6",
    ]));
    assert_eq!(v["result"]["n0"], 2);
    assert_eq!(v["result"]["stabilized"], true);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["branch", "--from", "GL4", "--to", "GL2", "--weight", "[2,1,0,0]"];
    let first = stdout(&bl(&args));
    let second = stdout(&bl(&args));
    assert_eq!(first, second);
    assert!(!first.is_empty());
}

#[test]
fn tsv_header_reruns_to_the_same_output() {
    let out = bl(&["rho", "--type", "C3", "--output", "tsv"]);
    let text = stdout(&out);
    let dir = std::env::temp_dir().join("bl-cli-tsv-rerun");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rho.tsv");
    std::fs::write(&path, &text).unwrap();
    let rerun = bl(&["--config", path.to_str().unwrap()]);
    assert!(rerun.status.success());
    assert_eq!(stdout(&rerun), text);
}

#[test]
fn json_output_reruns_to_the_same_output() {
    let out = bl(&["nu-check", "--type", "GL3", "--h", "[2,1,0]", "--nu", "[1,1,0]"]);
    let text = stdout(&out);
    let dir = std::env::temp_dir().join("bl-cli-json-rerun");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nu-check.json");
    std::fs::write(&path, &text).unwrap();
    let rerun = bl(&["--config", path.to_str().unwrap()]);
    assert!(rerun.status.success());
    assert_eq!(stdout(&rerun), text);
}

#[test]
fn explicit_flags_beat_config_entries() {
    let dir = std::env::temp_dir().join("bl-cli-precedence");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dim.cfg");
    std::fs::write(&path, "command=weyl-dim\ntype=GL3\nweight=[2,1,0]\n").unwrap();

    let from_file = json(&bl(&["--config", path.to_str().unwrap()]));
    assert_eq!(from_file["result"]["dim"], "8");

    let overridden = json(&bl(&[
        "weyl-dim", "--config", path.to_str().unwrap(), "--weight", "[1,0,0]",
    ]));
    assert_eq!(overridden["result"]["dim"], "3");
    assert_eq!(overridden["config"]["parameters"]["weight"], "[1,0,0]");
}

#[test]
fn config_command_conflicts_are_usage_errors() {
    let dir = std::env::temp_dir().join("bl-cli-conflict");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.cfg");
    std::fs::write(&path, "command=roots\ntype=B2\n").unwrap();
    let out = bl(&["rho", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("roots"));
}

#[test]
fn nu_check_reports_shape_and_degree() {
    let out = bl(&["nu-check", "--type", "GL3", "--h", "[1,0,-1]", "--nu", "[1,0,0]"]);
    let v = json(&out);
    assert_eq!(v["result"]["nu"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["result"]["nu_check"], "non-dominant");
    assert_eq!(v["result"]["degree"], 3);

    let dominant = json(&bl(&["nu-check", "--type", "GL2", "--h", "[1,0]", "--nu", "[0,3]"]));
    assert_eq!(dominant["result"]["nu_check"], serde_json::json!([2, 1]));
}

#[test]
fn domain_errors_exit_one_with_named_error() {
    let out = bl(&["weyl-dim", "--type", "GL3", "--weight", "[0,1,0]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error[NonDominant]:"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let missing = bl(&["weyl-dim", "--type", "GL3"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = bl(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_suite_reports_properties_and_passes() {
    let out = bl(&["verify", "--suite", "parabolic"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["passed"], true);
    let suites = v["result"]["suites"].as_array().unwrap();
    assert_eq!(suites[0]["suite"], "parabolic");
    assert!(suites[0]["properties"].as_array().unwrap()[0]["cases"].as_u64().unwrap() > 0);

    let bad = bl(&["verify", "--suite", "nonsense"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn seeds_flow_into_the_header_and_results_stay_reproducible() {
    let a = stdout(&bl(&["verify", "--suite", "towers", "--seed", "7"]));
    let b = stdout(&bl(&["verify", "--suite", "towers", "--seed", "7"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["seed"], 7);
}

#[test]
fn caps_from_the_environment_are_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_bl"))
        .args(["branch-diagonal", "--p", "2", "--theta", "3", "--weight", "[2,1,0,0,0,0]"])
        .env("BL_CAP", "matrix=4")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error[CapExceeded]:"));
}

#[test]
fn cap_flag_overrides_env_and_round_trips() {
    let out = Command::new(env!("CARGO_BIN_EXE_bl"))
        .args(["branch-diagonal", "--p", "2", "--theta", "3", "--weight", "[2,1,0,0,0,0]", "--cap", "matrix=4"])
        .env("BL_CAP", "matrix=64")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error[CapExceeded]:"));

    let ok = bl(&["centralizer", "--p", "2", "--theta", "2", "--cap", "matrix=8", "--output", "tsv"]);
    assert!(ok.status.success());
    let text = stdout(&ok);
    assert!(text.lines().any(|l| l == "# cap=matrix=8"));
    let dir = std::env::temp_dir().join("bl-cli-cap-rerun");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cent.tsv");
    std::fs::write(&path, &text).unwrap();
    let rerun = bl(&["--config", path.to_str().unwrap()]);
    assert_eq!(stdout(&rerun), text);
}

#[test]
fn pretty_bodies_never_look_like_header_lines() {
    let out = bl(&["parabolic", "--type", "GL4", "--h", "[2,1,1,0]", "--output", "pretty"]);
    let text = stdout(&out);
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        assert!(!line.contains('='), "{line}");
    }
}
