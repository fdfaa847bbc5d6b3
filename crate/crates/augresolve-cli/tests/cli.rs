use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run_with(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_augresolve"));
    cmd.args(args).env_remove("AUGRESOLVE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn run(args: &[&str]) -> (i32, String) {
    let (code, out, _) = run_with(args, &[]);
    (code, out)
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).expect("json output"))
}

#[test]
fn trefoil_census() {
    let (code, doc) = json(&["dga", "torus(2,3)"]);
    assert_eq!(code, 0);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 7);
    assert_eq!(gens.iter().filter(|g| g["degree"] == 0).count(), 4);
    assert_eq!(doc["d_squared_failures"], Value::Array(vec![]));
}

#[test]
fn unknot_has_one_closed_generator() {
    let (code, doc) = json(&["dga", "torus(1,0)"]);
    assert_eq!(code, 0);
    assert_eq!(doc["generators"][0]["name"], "s[1,1]");
    assert_eq!(doc["differential"]["s[1,1]"], Value::Array(vec![]));
}

#[test]
fn torus_four_three_census() {
    let (code, doc) = json(&["dga", "torus(4,3)"]);
    assert_eq!(code, 0);
    assert_eq!(doc["census"], serde_json::json!({ "b": 9, "c": 6, "s": 10 }));
    assert_eq!(doc["generators"].as_array().unwrap().len(), 25);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dga", "torus(2"]).0, 2);
    assert_eq!(run(&["dga", "torus(2,3) minus (9,9)"]).0, 2);
    assert_eq!(run(&["--cap", "3", "dga", "torus(2,3)"]).0, 2);
    assert_eq!(run_with(&["dga", "torus(2,3)"], &[("AUGRESOLVE_CAP", "2")]).0, 2);
    assert_eq!(run(&["resolve", "torus(2,3)", "--at", "c[2,1]"]).0, 2);
    assert_eq!(run(&["augs", "torus(5,6)"]).0, 3);
    assert_eq!(run(&["verify-paper", "--fixtures", "nope"]).0, 2);
}

#[test]
fn braid_from_file() {
    let dir = std::env::temp_dir().join(format!("augresolve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("braid.json");
    std::fs::File::create(&path).unwrap().write_all(br#"{"p":3,"q":3,"deleted":[[1,1],[3,1]]}"#).unwrap();
    let (code, from_file) = run(&["dga", "--file", path.to_str().unwrap()]);
    let (_, inline) = run(&["dga", "torus(3,3) minus (1,1) (3,1)"]);
    assert_eq!(code, 0);
    assert_eq!(from_file, inline);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn fixture_verdicts() {
    let (code, out) = run(&["--format", "tsv", "verify-paper"]);
    assert_eq!(code, 1);
    let verdicts: Vec<(String, String)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut cells = l.split('\t');
            (cells.next().unwrap().to_string(), cells.next().unwrap().to_string())
        })
        .collect();
    let expect = [
        ("torus43-psi", "fail"),
        ("braid3-psi", "pass"),
        ("braid3-bilinear", "fail"),
        ("unknot", "pass"),
        ("corollary", "fail"),
        ("braid3-dims", "fail"),
    ];
    let expect: Vec<(String, String)> = expect.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(verdicts, expect);
    assert_eq!(run(&["verify-paper", "--fixtures", "braid3-psi,unknot"]).0, 0);
}

#[test]
fn verify_reports_each_assertion() {
    let args = ["verify", "torus(3,3) minus (1,1) (3,1)", "--at", "b[2,1]", "--thm32", "--order", "ascending"];
    let (code, doc) = json(&args);
    assert_eq!(code, 0);
    let names: Vec<&str> = doc["assertions"].as_array().unwrap().iter().map(|a| a["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["thm32.triangular", "thm32.resolved-row-zero", "thm32.injective", "thm32.cochain-map"]);
    let (code, doc) = json(&["verify", "torus(3,3) minus (1,1) (3,1)", "--at", "b[2,1]", "--lemma31"]);
    assert_eq!(code, 0);
    assert_eq!(doc["assertions"][0]["pass"], true);
}

#[test]
fn output_is_byte_stable_across_workers() {
    let args = ["resolve", "torus(4,3)", "--at", "b[1,1]"];
    let (_, a, _) = run_with(&args, &[("RAYON_NUM_THREADS", "1")]);
    let (_, b, _) = run_with(&args, &[("RAYON_NUM_THREADS", "4")]);
    let (_, c, _) = run_with(&args, &[]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn engines_agree_through_the_front_end() {
    let walk = run(&["dga", "torus(3,3)"]);
    let both = run(&["--engine", "both", "dga", "torus(3,3)"]);
    let oracle = run(&["--engine", "oracle", "dga", "torus(3,3)"]);
    assert_eq!(walk, both);
    assert_eq!(walk, oracle);
    assert_eq!(run(&["--engine", "nope", "dga", "torus(3,3)"]).0, 2);
}

#[test]
fn tabular_formats() {
    let (_, tsv) = run(&["--format", "tsv", "lch", "torus(2,3)", "--pair", "0,0"]);
    assert_eq!(tsv, "first\tsecond\tdim0\tdim1\n0\t0\t2\t1\n");
    let (_, text) = run(&["--format", "text", "mu", "torus(2,3)", "--augs", "0,0", "--inputs", "b[1,1]"]);
    assert!(text.starts_with("arity  output\n1"));
}

fn validate(schema: &str, document: &str) -> Result<(), String> {
    let script = "import json, sys, jsonschema\n\
                  schema = json.load(open(sys.argv[1]))\n\
                  jsonschema.validate(json.load(sys.stdin), schema)\n";
    let mut child = match Command::new("python3")
        .args(["-c", script, schema])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return Err(format!("python3 unavailable: {e}")),
    };
    child.stdin.take().unwrap().write_all(document.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    if out.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    }
}

#[test]
fn documents_match_shipped_schemas() {
    let schemas = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let cases: [(&str, &[&str]); 8] = [
        ("dga", &["dga", "torus(3,3)"]),
        ("augs", &["augs", "torus(2,3)"]),
        ("lch", &["lch", "torus(2,3)"]),
        ("resolve", &["resolve", "torus(4,3)", "--at", "b[1,1]"]),
        ("mu", &["mu", "torus(2,3)", "--augs", "0,1,2", "--inputs", "b[1,1],b[3,1]"]),
        ("verify", &["verify", "torus(2,3)", "--at", "b[2,1]"]),
        ("verify-paper", &["verify-paper", "--fixtures", "braid3-psi,unknot,braid3-dims"]),
        ("sweep", &["sweep", "--p-max", "2", "--q-max", "2", "--check", "engines"]),
    ];
    for (name, args) in cases {
        let (_, out) = run(args);
        let schema = schemas.join(format!("{name}.schema.json"));
        validate(schema.to_str().unwrap(), &out).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
