use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contact-atlas"))
        .args(args)
        .env_remove("CONTACT_ATLAS_SEED")
        .output()
        .expect("binary runs")
}

fn run_with_seed(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contact-atlas"))
        .args(args)
        .env("CONTACT_ATLAS_SEED", seed)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

const COMMANDS: &[&[&str]] = &[
    &["fav", "--n", "1", "--json"],
    &["fav", "--n", "2", "--json"],
    &["p5", "--json"],
    &["threefold", "--g", "2", "--e", "3", "--a", "19", "--json"],
    &["threefold", "--g", "1", "--e", "0", "--a", "1", "--json"],
    &["quotient-check", "quot", "--json"],
    &["quotient-check", "p5", "--expect", "induced", "--json"],
    &["nilpotent", "--k", "4", "--json"],
    &["nilpotent", "--n", "1", "--samples", "50", "--json"],
    &["chow", "xi^3", "--g", "2", "--json"],
];

#[test]
fn reports_are_byte_identical() {
    for args in COMMANDS {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v = json(&a);
        assert_eq!(v["schema"], "1", "{args:?}");
        for key in ["pipeline", "inputs", "checks", "artifacts", "warnings"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn checks_carry_anchors() {
    let v = json(&run(&["fav", "--n", "1", "--json"]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 14);
    let crepant = checks.iter().find(|c| c["name"] == "resolution_crepant").unwrap();
    assert_eq!(crepant["anchor"], "the resolution is crepant");
    assert_eq!(crepant["expected"], true);
}

#[test]
fn seed_comes_from_environment() {
    let args = ["nilpotent", "--n", "1", "--samples", "20", "--json"];
    let default = json(&run(&args));
    assert_eq!(default["inputs"]["seed"], 42);
    let env = json(&run_with_seed(&args, "7"));
    assert_eq!(env["inputs"]["seed"], 7);
    assert_ne!(default["artifacts"]["kk"], env["artifacts"]["kk"]);
    // an explicit flag beats the environment
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "42"]);
    assert_eq!(json(&run_with_seed(&flagged, "7")), default);
}

#[test]
fn failing_check_is_named() {
    let out = run(&["quotient-check", "quot", "--expect", "induced"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("check failed: verdict"), "{stderr}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] verdict"));

    let out = run(&["chow", "xi^3", "--g", "2", "--expect", "5", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let first = v["checks"].as_array().unwrap().iter().find(|c| c["pass"] == false).unwrap();
    assert_eq!(first["name"], "degree");
    assert!(String::from_utf8_lossy(&out.stderr).contains("check failed: degree"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["fav", "--n", "7"][..],
        &["threefold", "--g", "0", "--e", "-1"],
        &["chow", "xi +"],
        &["quotient-check", "no_such_action"],
        &["nilpotent", "--k", "2", "--n", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["quotient-check", "no_such_action"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bundled: quot"));
}

#[test]
fn action_file_input() {
    let dir = std::env::temp_dir().join(format!("contact-atlas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flip.json");
    std::fs::write(
        &path,
        r#"{"n": 1, "generators": [[[1,0,0,0],[0,-1,0,0],[0,0,1,0],[0,0,0,-1]]]}"#,
    )
    .unwrap();
    let out = run(&["quotient-check", path.to_str().unwrap(), "--expect", "induced", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["artifacts"]["verdict"]["verdict"], "InducedContactStructure");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output() {
    let out = run(&["threefold", "--g", "0", "--e", "1", "--a", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] d_a_cubed"), "{text}");
    assert!(text.contains("checks passed"));
}
