//! Byte-for-byte comparison of command output against `tests/golden`.
//! Set `COMBLAB_BLESS=1` to rewrite the expected files.

mod support;

use std::fs;

use support::{cases, golden_path, run};

#[test]
fn golden_outputs_match() {
    let bless = std::env::var_os("COMBLAB_BLESS").is_some();
    let mut mismatches = Vec::new();
    for c in cases() {
        let out = run(&c.args);
        assert_eq!(
            out.status.code(),
            Some(c.exit),
            "{}: exit code; stderr: {}",
            c.name,
            String::from_utf8_lossy(&out.stderr)
        );
        let path = golden_path(c.name);
        if bless {
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != out.stdout {
            mismatches.push(c.name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn repeated_runs_are_identical() {
    for c in cases() {
        let a = run(&c.args);
        let b = run(&c.args);
        assert_eq!(a.stdout, b.stdout, "{}", c.name);
    }
}

#[test]
fn enough_cases() {
    assert!(cases().len() >= 15);
}
