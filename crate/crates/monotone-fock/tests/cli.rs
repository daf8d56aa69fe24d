//! End-to-end checks of the binary surface: exit codes, byte-identical
//! output, and JSON documents validating against the shipped schema.

use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_monotone-fock"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = binary().args(args).output().expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

#[test]
fn enumerate_csv_golden() {
    let (code, stdout, stderr) = run(&["enumerate", "-n", "1"]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout, "word,partition\n-+,\"(1,2)\"\n");
}

#[test]
fn moment_limit_golden() {
    let (code, stdout, _) = run(&["moment", "--word", "--++"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "word,order,mode,value,note\n--++,monotone,limit,5.0000000000000000e-1,\n"
    );
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = [
        "moment",
        "--word",
        "--++",
        "--mode",
        "mc",
        "--samples",
        "5000",
        "--seed",
        "3",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first, second);
    assert_eq!(first.0, 0);
}

#[test]
fn exit_codes_from_the_binary() {
    assert_eq!(run(&["moment"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["moment", "--word", "-+", "-f", "poly:1"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn json_outputs_validate_against_the_shipped_schema() {
    let schema_text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schemas/output.schema.json"
    ))
    .unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();

    let invocations: Vec<Vec<&str>> = vec![
        vec!["moment", "--word", "--++", "--format", "json"],
        vec!["moment", "--word", "-+-", "--format", "json"],
        vec![
            "moment",
            "--word",
            "--++",
            "--mode",
            "mc",
            "--samples",
            "1000",
            "--seed",
            "5",
            "--format",
            "json",
        ],
        vec![
            "moment", "--word", "--++", "--mode", "finite", "-n", "7", "--format", "json",
        ],
        vec![
            "converge", "--word", "--++", "--ns", "4,16", "--format", "json",
        ],
        vec![
            "arcsine",
            "--max-order",
            "4",
            "--ns",
            "32",
            "--format",
            "json",
        ],
        vec!["enumerate", "-n", "3", "--format", "json"],
        vec![
            "invariance",
            "--word",
            "-+",
            "--interval",
            "0:0.5",
            "--ns",
            "10,100",
            "--format",
            "json",
        ],
    ];
    for args in invocations {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let errors: Vec<String> = validator
            .iter_errors(&doc)
            .map(|e| format!("{e}"))
            .collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn csv_always_has_a_header_row() {
    for args in [
        vec!["moment", "--word", "-+"],
        vec!["converge", "--word", "-+", "--ns", "2,4"],
        vec!["arcsine", "--max-order", "2", "--ns", "8"],
        vec!["enumerate", "-n", "2"],
        vec!["invariance", "--word", "-+", "--ns", "2,4"],
    ] {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        let header = stdout.lines().next().unwrap();
        assert!(
            header
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == ',' || c == '_'),
            "{args:?}: {header}"
        );
    }
}

#[test]
fn anti_order_flag_reaches_the_engine() {
    let (code, stdout, _) = run(&[
        "converge", "--word", "--++", "--order", "anti", "--ns", "64",
    ]);
    assert_eq!(code, 0);
    // same limit 1/2 as the monotone mirror
    assert!(stdout.contains("5.0000000000000000e-1"));
}
