use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).display().to_string()
}

fn run(args: &[&str]) -> (Value, i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_matslocc"))
        .args(args)
        .env_remove("MATSLOCC_SEED")
        .env_remove("MATSLOCC_TRIALS")
        .env_remove("MATSLOCC_PRIME")
        .env_remove("MATSLOCC_SIZE_GUARD")
        .env_remove("MATSLOCC_CERTIFY")
        .env_remove("MATSLOCC_JOBS")
        .env_remove("MATSLOCC_PRETTY")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (v, code, stdout)
}

fn result(args: &[&str]) -> Value {
    let (v, code, text) = run(args);
    assert_eq!(code, 0, "{text}");
    v["result"].clone()
}

#[test]
fn analyze_skew3() {
    let r = result(&["analyze", &fixture("spaces/skew3.json")]);
    assert_eq!(r["dim"], 3);
    assert_eq!(r["mrk"]["rank"], 2);
    assert_eq!(r["greedy_mrk"], 2);
    assert_eq!((r["image_dim"].as_u64(), r["kernel_dim"].as_u64()), (Some(3), Some(0)));
    assert_eq!(r["shrunk"]["decision"], "no-shrunk");
    assert_eq!(r["shrunk"]["certificate"]["k"], 2);
    assert_eq!(r["shrunk"]["certificate"]["exact_rank"], 6);
    assert_eq!((r["ncrk"]["lower"].as_u64(), r["ncrk"]["upper"].as_u64()), (Some(3), Some(3)));
}

#[test]
fn analyze_a113() {
    let r = result(&["analyze", &fixture("spaces/a113.json")]);
    assert_eq!(r["mrk"]["rank"], 2);
    assert_eq!(r["shrunk"]["decision"], "shrunk");
    assert_eq!(r["shrunk"]["certificate"]["shrinkage"], 1);
    assert_eq!(r["shrunk"]["failure_bound"], "0");
    assert_eq!((r["ncrk"]["lower"].as_u64(), r["ncrk"]["upper"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn analyze_certify_reverifies() {
    for name in ["skew3", "a113", "ghz", "identity4"] {
        let r = result(&["--certify", "analyze", &fixture(&format!("spaces/{name}.json"))]);
        assert_eq!(r["mrk"]["certified_rank"], r["mrk"]["rank"], "{name}");
        if r["shrunk"]["decision"] == "no-shrunk" {
            assert_eq!(r["shrunk"]["verified"], true, "{name}");
        }
    }
}

#[test]
fn analyze_rejects_broken_files() {
    for name in ["ragged", "empty"] {
        let (v, code, _) = run(&["analyze", &fixture(&format!("spaces/{name}.json"))]);
        assert_eq!(code, 2);
        assert_eq!(v["exit_code"], 2);
        assert!(v["error"].as_str().unwrap().contains("line"), "{v}");
    }
    let (v, code, _) = run(&["analyze", "/nonexistent/space.json"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn convert_examples() {
    let skew = fixture("states/skew3.json");
    let r = result(&["--certify", "convert", &skew, "--copies", "2", "--target", "9"]);
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["certified_rank"], 9);
    // 9^1 <= 9 < 9^2: one copy of the rank-9 target.
    assert_eq!(r["max_copies"], 1);

    let r = result(&["convert", &skew, "--copies", "1", "--target", "3"]);
    assert_eq!(r["verdict"], "no");
    assert_eq!(r["msrk"], 2);

    let r = result(&["convert", &fixture("states/ghz.json"), "--copies", "1", "--target", "2"]);
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["max_copies"], 1);
}

#[test]
fn rate_examples() {
    let r = result(&["rate", &fixture("states/skew3.json"), "--target", "3"]);
    assert_eq!(r["exact"], true);
    assert_eq!(r["lower"], 1.0);
    assert_eq!(r["upper"], 1.0);
    assert_eq!(r["provenance"]["kind"], "shrunk-free");

    let r = result(&["rate", &fixture("states/a113.json"), "--target", "2", "--max-copies", "2"]);
    assert_eq!(r["upper"], 1.5);
    assert_eq!(r["provenance"]["kind"], "compression-embedding");
    assert!(r["finite_copy_lower"].as_f64().unwrap() >= 6f64.log2() / 2.0 - 1e-9);

    let r = result(&["rate", &fixture("states/ghz.json"), "--target", "2"]);
    assert_eq!((r["lower"].as_f64(), r["upper"].as_f64()), (Some(1.0), Some(1.0)));
}

#[test]
fn rate_rejects_target_one() {
    let (_, code, _) = run(&["rate", &fixture("states/ghz.json"), "--target", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn compression_examples() {
    let r = result(&["compression", "--p", "1", "--q", "1", "--d", "3", "--copies", "2"]);
    assert_eq!(r["mrk"], 6);

    let r = result(&["compression", "--p", "1", "--q", "1", "--d", "3", "--asymptotic"]);
    assert!((r["mrk_inf"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);

    let r = result(&["compression", "--p", "1", "--q", "2", "--d", "4", "--asymptotic"]);
    assert!((r["alpha"].as_f64().unwrap() - 0.63093).abs() < 1e-5);
    assert!((r["mrk_inf"].as_f64().unwrap() - 3.8638).abs() < 5e-4);
}

#[test]
fn compression_large_power_is_a_string() {
    let r = result(&["compression", "--p", "1", "--q", "1", "--d", "3", "--copies", "60"]);
    assert!(r["mrk"].is_string());
}

#[test]
fn compression_rejects_bad_triples() {
    let (v, code, _) = run(&["compression", "--p", "2", "--q", "2", "--d", "3", "--copies", "1"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    let (_, code, _) = run(&["compression", "--p", "0", "--q", "0", "--d", "3", "--asymptotic"]);
    assert_eq!(code, 2);
    // Exactly one of --copies and --asymptotic.
    let (_, code, _) = run(&["compression", "--p", "1", "--q", "1", "--d", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn size_guard_exit_code() {
    let (v, code, _) = run(&["--size-guard", "100", "convert", &fixture("states/skew3.json"), "--copies", "3", "--target", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["exit_code"], 3);
    let (_, code, _) = run(&["--size-guard", "20", "analyze", &fixture("spaces/skew3.json")]);
    assert_eq!(code, 3);
}

#[test]
fn config_errors_exit_two() {
    let skew = fixture("spaces/skew3.json");
    assert_eq!(run(&["--prime", "7", "analyze", &skew]).1, 2);
    assert_eq!(run(&["--trials", "0", "analyze", &skew]).1, 2);
    assert_eq!(run(&["--seed", "nope", "analyze", &skew]).1, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).1, 2);
}

#[test]
fn env_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_matslocc"))
        .args(["analyze", &fixture("spaces/ghz.json")])
        .env("MATSLOCC_SEED", "7")
        .env("MATSLOCC_PRIME", "13")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["prime"], 13);
    assert_eq!(v["result"]["mrk"]["witness"]["prime"], 13);
}

#[test]
fn output_is_deterministic_and_jobs_independent() {
    let skew = fixture("spaces/skew3.json");
    let (_, _, a) = run(&["--seed", "5", "analyze", &skew]);
    let (_, _, b) = run(&["--seed", "5", "analyze", &skew]);
    let (_, _, c) = run(&["--seed", "5", "--jobs", "4", "analyze", &skew]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let args = ["compression", "--p", "1", "--q", "2", "--d", "4", "--asymptotic"];
    let (plain, _, _) = run(&args);
    let mut pretty_args = vec!["--pretty"];
    pretty_args.extend(args);
    let (pretty, _, text) = run(&pretty_args);
    assert!(text.contains("\n  "));
    assert_eq!(plain, pretty);
}

#[test]
fn verify_suites_pass() {
    for suite in ["paper-values", "formulas-vs-oracle", "invariants"] {
        let (v, code, text) = run(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(v["result"]["passed"], true);
        for check in v["result"]["checks"].as_array().unwrap() {
            assert_eq!(check["pass"], true, "{check}");
            assert!(check.get("observed").is_some());
        }
    }
}
