//! Runs every `golden/*.args` case and compares the transcript with the
//! matching `.out` file. `UPDATE_GOLDEN=1` rewrites the expectations.

use std::fs;
use std::path::Path;
use std::process::Command;

fn transcript(dir: &Path, args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_weil"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("weil runs");
    let mut s = String::from_utf8(out.stdout).unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    if !err.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&err);
    }
    s.push_str(&format!("--- exit {}\n", out.status.code().unwrap_or(-1)));
    s
}

#[test]
fn golden_transcripts() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut cases: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    cases.sort();
    assert!(!cases.is_empty());
    let mut failed = Vec::new();
    for case in &cases {
        let args: Vec<String> = fs::read_to_string(case).unwrap().lines().map(str::to_string).collect();
        let got = transcript(&dir, &args);
        let expected_path = case.with_extension("out");
        if update {
            fs::write(&expected_path, &got).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&expected_path).unwrap_or_default();
        if got != expected {
            failed.push(format!("{}:\n--- expected\n{expected}--- got\n{got}", case.display()));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn output_is_deterministic() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let args: Vec<String> = ["verify", "--max-vertices", "2", "--samples", "30", "--seed", "7"]
        .map(String::from)
        .into();
    assert_eq!(transcript(&dir, &args), transcript(&dir, &args));
}
