use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name);
    p.to_string_lossy().into_owned()
}

struct Out {
    stdout: String,
    stderr: String,
    code: i32,
}

fn untwist(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_untwist"))
        .args(args)
        .output()
        .expect("binary runs");
    Out {
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
        code: o.status.code().expect("exit code"),
    }
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = untwist(&full);
    let v: Value =
        serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", o.stdout));
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v:#}");
    (v, o.code)
}

#[test]
fn examples_from_the_manual() {
    let o = untwist(&["run", &fixture("t_mirror.tdx"), "--input", "ab"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("\"abba\""), "{}", o.stdout);

    let o = untwist(&[
        "decide",
        "oneway",
        &fixture("t_copy_ab.tdx"),
        "--max-len",
        "10",
    ]);
    assert_eq!(o.code, 1);
    assert!(
        o.stdout.starts_with("refuted on input \"ab\""),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("untwist-certificate v1"));

    let o = untwist(&["decide", "oneway", &fixture("t_id.tdx"), "--max-len", "6"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("no counterexample up to 6"));
}

#[test]
fn every_subcommand_has_a_schema_valid_json_form() {
    let id = fixture("t_id.tdx");
    let copy = fixture("t_copy_ab.tdx");
    let abc = fixture("t_copy_abc.tdx");
    let mirror = fixture("t_mirror.tdx");
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.txt");
    let cert = cert.to_str().unwrap();
    let cases: Vec<(Vec<&str>, &str, &str, i32)> = vec![
        (vec!["parse", &id], "result", "valid", 0),
        (vec!["constants", &id], "result", "ok", 0),
        (
            vec!["run", &mirror, "--input", "ab"],
            "result",
            "accepted",
            0,
        ),
        (vec!["run", &abc, "--input", "ab"], "result", "absent", 2),
        (
            vec!["analyze", &copy, "--input", "ab"],
            "result",
            "unsafe",
            0,
        ),
        (vec!["analyze", &id, "--input", "ab"], "result", "safe", 0),
        (
            vec!["pump", &id, "--input", "ab", "--loop", "1,2"],
            "result",
            "pumped",
            0,
        ),
        (
            vec!["decompose", &abc, "--input", "abc"],
            "result",
            "decomposed",
            0,
        ),
        (
            vec!["decompose", &copy, "--input", "ab"],
            "result",
            "unsafe",
            1,
        ),
        (
            vec!["simulate-oneway", &abc, "--input", "abc"],
            "result",
            "output",
            0,
        ),
        (
            vec!["simulate-oneway", &copy, "--input", "ab"],
            "result",
            "absent",
            2,
        ),
        (
            vec!["decide", "oneway", &copy, "--max-len", "3", "--cert", cert],
            "verdict",
            "refuted",
            1,
        ),
        (
            vec!["verify-cert", &copy, "--cert", cert],
            "verdict",
            "valid",
            0,
        ),
        (
            vec!["verify-cert", &id, "--cert", cert],
            "verdict",
            "invalid",
            1,
        ),
        (
            vec!["decide", "oneway", &id, "--max-len", "3"],
            "verdict",
            "no-counterexample",
            0,
        ),
        (
            vec![
                "decide",
                "sweeping",
                &mirror,
                "--passes",
                "2",
                "--max-len",
                "4",
            ],
            "verdict",
            "no-counterexample",
            0,
        ),
        (
            vec![
                "decide",
                "sweeping",
                &mirror,
                "--passes",
                "1",
                "--max-len",
                "4",
            ],
            "verdict",
            "refuted",
            1,
        ),
        (
            vec![
                "decide",
                "sweeping",
                &mirror,
                "--passes",
                "symbolic",
                "--max-len",
                "2",
            ],
            "verdict",
            "bound-exceeded",
            69,
        ),
    ];
    for (args, key, value, code) in cases {
        let (v, got) = json(&args);
        assert_eq!(
            (v[key].as_str(), got),
            (Some(value), code),
            "{args:?}\n{v:#}"
        );
    }
}

#[test]
fn simulation_transcript_is_left_to_right() {
    let (v, _) = json(&[
        "simulate-oneway",
        &fixture("t_copy_abc.tdx"),
        "--input",
        "abcabc",
    ]);
    assert_eq!(v["details"]["output"], "abcabcabcabc");
    assert_eq!(v["details"]["left_to_right"], true);
}

#[test]
fn errors_map_to_exit_codes() {
    let (v, code) = json(&["run", "/definitely/missing.tdx", "--input", "a"]);
    assert_eq!((v["result"].as_str(), code), (Some("error"), 66));
    assert_eq!(v["details"]["exit_code"], 66);

    let o = untwist(&["run", &fixture("t_id.tdx"), "--input", "xyz"]);
    assert_eq!(o.code, 65);
    assert!(o.stderr.starts_with("error: "), "{}", o.stderr);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tdx");
    std::fs::write(
        &bad,
        "transducer X\ninput a\nstates p\ninitial p\nfinal p\nt p a R z \"\"\n",
    )
    .unwrap();
    assert_eq!(untwist(&["parse", bad.to_str().unwrap()]).code, 65);

    assert_eq!(untwist(&["frobnicate"]).code, 64);
    assert_eq!(
        untwist(&["decide", "oneway", &fixture("t_id.tdx")]).code,
        64
    );
    assert_eq!(
        untwist(&[
            "decide",
            "sweeping",
            &fixture("t_id.tdx"),
            "--max-len",
            "2",
            "--passes",
            "0"
        ])
        .code,
        64
    );
    assert_eq!(
        untwist(&[
            "run",
            &fixture("t_copy_ab.tdx"),
            "--input",
            "abab",
            "--cap-steps",
            "3"
        ])
        .code,
        69
    );
    assert_eq!(untwist(&["--help"]).code, 0);

    let missing_dir = dir.path().join("no/such/dir/cert.txt");
    let o = untwist(&[
        "decide",
        "oneway",
        &fixture("t_copy_ab.tdx"),
        "--max-len",
        "2",
        "--cert",
        missing_dir.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 73);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "analyze",
        &fixture("t_running.tdx"),
        "--input",
        "abc$ab",
    ];
    let a = untwist(&args);
    let b = untwist(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("elapsed"));
    let mut timed = args.to_vec();
    timed.push("--stats");
    assert!(untwist(&timed).stdout.contains("elapsed_ms"));
}

#[test]
fn dumps_and_certificates_are_written_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("runs.txt");
    let o = untwist(&[
        "run",
        &fixture("t_mirror.tdx"),
        "--input",
        "ab",
        "--dump-runs",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0);
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.contains("output: \"abba\""), "{text}");

    let cert = dir.path().join("c.txt");
    untwist(&[
        "decide",
        "sweeping",
        &fixture("t_mirror.tdx"),
        "--passes",
        "1",
        "--max-len",
        "3",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("mode sweeping 1"));
    assert_eq!(
        untwist(&[
            "verify-cert",
            &fixture("t_mirror.tdx"),
            "--cert",
            cert.to_str().unwrap()
        ])
        .code,
        0
    );
}

#[test]
fn schema_rejects_malformed_reports() {
    let s = schema();
    let ok = serde_json::json!({ "command": "run", "result": "accepted", "details": {} });
    assert!(s.is_valid(&ok));
    for bad in [
        serde_json::json!({ "command": "run", "details": {} }),
        serde_json::json!({ "command": "run", "result": "accepted", "verdict": "valid", "details": {} }),
        serde_json::json!({ "command": "launch", "result": "accepted", "details": {} }),
        serde_json::json!({ "command": "run", "result": "error", "details": {} }),
        serde_json::json!({ "command": "decide oneway", "verdict": "refuted", "details": {} }),
    ] {
        assert!(!s.is_valid(&bad), "{bad}");
    }
}
