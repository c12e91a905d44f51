use std::process::{Command, Output};

use serde_json::Value;

fn hooklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hooklab"))
        .args(args)
        .env_remove("HOOKLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hooklab(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../docs/hooklab-output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

#[test]
fn counts() {
    for (shape, method, expected) in [("3,2/1", "naruse", "5"), ("2,2", "hlf", "2"), ("3,2/1", "enum", "5")] {
        let out = hooklab(&["count", "--shape", shape, "--method", method]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expected);
    }
    assert_eq!(json(&["count", "--shape", "4,4,3/3,1", "--method", "naruse"])["count"], 70);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(hooklab(&["count", "--shape", "3,2/1", "--method", "hlf"]).status.code(), Some(3));
    assert_eq!(hooklab(&["count", "--shape", "3,x"]).status.code(), Some(2));
    assert_eq!(hooklab(&["count", "--shape", "2/3"]).status.code(), Some(2));
    assert_eq!(hooklab(&["list", "fssyt", "--shape-mu", "2,1"]).status.code(), Some(3));
    assert_eq!(hooklab(&["list", "syt"]).status.code(), Some(3));
    assert_eq!(hooklab(&["verify", "main"]).status.code(), Some(3));
    assert_eq!(hooklab(&["verify", "main", "--box", "3"]).status.code(), Some(2));
    assert_eq!(hooklab(&["verify", "no-such-identity"]).status.code(), Some(2));
}

#[test]
fn listings() {
    let exc = json(&["list", "excitations", "--shape", "4,4,3/3,1"]);
    assert_eq!(exc.as_array().unwrap().len(), 7);
    assert_eq!(exc[0], serde_json::json!([[1, 1], [1, 2], [1, 3], [2, 1]]));
    let syt = json(&["list", "syt", "--shape", "2,2"]);
    assert_eq!(syt, serde_json::json!([[[1, 2], [3, 4]], [[1, 3], [2, 4]]]));
    let fssyt = json(&["list", "fssyt", "--shape-mu", "3,2,1", "--flags", "2,3,3"]);
    assert_eq!(fssyt.as_array().unwrap().len(), 5);
    let induced = json(&["list", "fssyt", "--shape", "4,4,3/3,2,1", "--induced"]);
    assert_eq!(induced, fssyt);
    let skew = json(&["list", "syt", "--shape", "3,2/1"]);
    assert_eq!(skew[0], serde_json::json!([[null, 1, 2], [3, 4]]));
    let ssyt = json(&["list", "ssyt", "--shape-mu", "2,1", "--max-entry", "3"]);
    assert_eq!(ssyt.as_array().unwrap().len(), 8);
    let text = stdout(&hooklab(&["list", "excitations", "--shape", "3,2/1"]));
    assert_eq!(text, "{(1,1)}\n{(2,2)}\n");
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "main", "--box", "3,3", "--trials", "3", "--seed", "42"][..],
        &["verify", "naruse", "--box", "3,3"],
        &["verify", "h-recursions", "--a-max", "5", "--b-max", "4", "--c-range", "-4,4"],
        &["verify", "konvalinka", "--box", "3,3"],
        &["verify", "konvalinka-variant", "--shape", "4,4,3/3,1"],
        &["verify", "jt", "--shape", "2,1", "--max-flag", "3"],
        &["verify", "det-identities", "--max-n", "3", "--trials", "10"],
        &["verify", "z-recursion", "--max-size", "4", "--trials", "2"],
        &["verify", "rhs-recursion", "--max-size", "4", "--trials", "2"],
        &["verify", "w-identities", "--max-size", "4", "--trials", "2"],
    ] {
        let out = hooklab(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
        assert!(stdout(&out).lines().last().unwrap().contains("passed"));
    }
}

#[test]
fn verify_json_summary() {
    let v = json(&["verify", "main", "--shape", "3,2/1", "--trials", "3", "--seed", "42"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["total"], 1);
    let inst = &v["instances"][0];
    assert_eq!(inst["theorem"], "main");
    assert_eq!(inst["lambda"], serde_json::json!([3, 2]));
    assert_eq!(inst["points"].as_array().unwrap().len(), 3);
    assert!(v.get("elapsed_ms").is_none());

    let k = json(&["verify", "konvalinka", "--shape", "2,2/2"]);
    assert_eq!(k["total"], 1);
    let none = json(&["verify", "konvalinka", "--shape", "2,2/2,2"]);
    assert_eq!(none["total"], 0);
}

#[test]
fn json_is_deterministic_and_seeded() {
    let args = ["verify", "main", "--box", "2,3", "--trials", "2", "--seed", "7", "--json"];
    let a = stdout(&hooklab(&args));
    let b = stdout(&hooklab(&[&args[..], &["--jobs", "1"]].concat()));
    assert_eq!(a, b);
    let c = stdout(&hooklab(&["verify", "main", "--box", "2,3", "--trials", "2", "--seed", "8", "--json"]));
    assert_ne!(a, c);
    let from_env = Command::new(env!("CARGO_BIN_EXE_hooklab"))
        .args(["verify", "main", "--box", "2,3", "--trials", "2", "--json"])
        .env("HOOKLAB_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(from_env.stdout).unwrap(), a);
}

#[test]
fn outputs_match_the_schema() {
    let validator = schema();
    let docs = [
        json(&["count", "--shape", "3,2/1", "--method", "naruse"]),
        json(&["list", "syt", "--shape", "3,2/1"]),
        json(&["list", "excitations", "--shape", "4,4,3/3,1"]),
        json(&["list", "fssyt", "--shape-mu", "3,2,1", "--flags", "2,3,3"]),
        json(&["verify", "main", "--box", "2,2", "--trials", "2"]),
        json(&["verify", "w-identities", "--box", "2,2", "--trials", "1", "--timings"]),
        json(&["verify", "naruse", "--box", "2,2"]),
        json(&["verify", "jt", "--shape", "1,1", "--max-flag", "2"]),
        json(&["verify", "h-recursions", "--a-max", "1", "--b-max", "1", "--c-range", "0,0"]),
        json(&["verify", "det-identities", "--max-n", "2", "--trials", "2"]),
        json(&["verify", "konvalinka", "--box", "2,2"]),
    ];
    for doc in &docs {
        let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{doc}: {errors:?}");
    }
    assert!(!validator.is_valid(&serde_json::json!({"identity": "main"})));
}
