#![allow(dead_code)]

use std::path::{Path, PathBuf};

use twistcon::Outcome;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

/// Runs the CLI with fixture-relative paths for every argument ending in
/// `.pc` or `.map`.
pub fn cli(args: &[&str]) -> Outcome {
    let mut argv = vec!["twistcon".to_string()];
    for a in args {
        if a.ends_with(".pc") || a.ends_with(".map") {
            argv.push(fixture(a));
        } else {
            argv.push(a.to_string());
        }
    }
    twistcon::run(argv)
}

pub fn files_with_extension(ext: &str) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![fixtures()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == ext) {
                out.push(path);
            }
        }
    }
    out.sort();
    out
}

pub fn schema_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/output.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Schema violations of one JSON output, as messages.
pub fn schema_errors(validator: &jsonschema::Validator, stdout: &str) -> Vec<String> {
    let value: serde_json::Value = match serde_json::from_str(stdout) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    validator.iter_errors(&value).map(|e| e.to_string()).collect()
}

/// Invocations covering every command and outcome, with expected exit codes.
pub fn exit_code_matrix() -> Vec<(Vec<&'static str>, i32)> {
    vec![
        (vec!["check", "heis/heis.pc"], 0),
        (vec!["check", "z4/z4.pc"], 0),
        (vec!["check", "filiform/filiform.pc"], 0),
        (vec!["eq", "heis/heis.pc", "heis/flip.map", "heis/id.map"], 0),
        (vec!["eq", "q8/q8.pc", "q8/swap.map", "q8/id.map"], 0),
        (vec!["twisted", "heis/heis.pc", "heis/id.map", "heis/id.map", "-u", "a", "-v", "a c"], 0),
        (vec!["twisted", "heis/heis.pc", "heis/id.map", "heis/id.map", "-u", "a", "-v", "b"], 0),
        (vec!["twisted", "z4/z4.pc", "z4/times3.map", "z4/id.map", "-u", "", "-v", "t"], 0),
        (vec!["twisted", "z/z.pc", "z/times3.map", "z/id.map", "-u", "", "-v", "t^-6"], 0),
        (vec!["classes", "z4/z4.pc", "z4/times3.map", "z4/id.map"], 0),
        (vec!["classes", "d8/d8.pc", "d8/id.map", "d8/id.map"], 0),
        (vec!["--help"], 0),
        (vec![], 1),
        (vec!["frobnicate"], 1),
        (vec!["eq", "heis/heis.pc", "heis/flip.map"], 1),
        (vec!["twisted", "heis/heis.pc", "heis/id.map", "heis/id.map", "-u", "a"], 1),
        (vec!["check", "--max-class", "x", "heis/heis.pc"], 1),
        (vec!["check", "nonexistent.pc"], 1),
        (vec!["check", "invalid/syntax.pc"], 1),
        (vec!["eq", "heis/heis.pc", "heis/missing.map", "heis/id.map"], 1),
        (vec!["twisted", "heis/heis.pc", "heis/id.map", "heis/id.map", "-u", "a x", "-v", ""], 1),
        (vec!["check", "invalid/heis_inverse.pc"], 2),
        (vec!["check", "invalid/doubling.pc"], 2),
        (vec!["check", "invalid/cube_action.pc"], 2),
        (vec!["check", "invalid/square_root.pc"], 2),
        (vec!["check", "invalid/power_commute.pc"], 2),
        (vec!["check", "invalid/jacobi.pc"], 2),
        (vec!["check", "invalid/index.pc"], 2),
        (vec!["check", "invalid/missing_inverse.pc"], 2),
        (vec!["check", "invalid/s3.pc"], 2),
        (vec!["check", "invalid/klein.pc"], 2),
        (vec!["check", "--max-class", "2", "d8/d8.pc"], 2),
        (vec!["eq", "heis/heis.pc", "heis/swap_invalid.map", "heis/id.map"], 2),
        (vec!["eq", "heis/heis.pc", "heis/wrong_domain.map", "heis/id.map"], 2),
        (vec!["classes", "heis/heis.pc", "heis/id.map", "heis/id.map"], 2),
        (vec!["classes", "--oracle-limit", "8", "d8/d8.pc", "d8/id.map", "d8/id.map"], 2),
    ]
}

pub fn enumeration(g: &std::sync::Arc<twistcon_core::PcPresentation>) -> twistcon_core::oracle::FiniteEnumeration {
    twistcon_core::oracle::enumerate(g, twistcon_core::oracle::DEFAULT_ORACLE_LIMIT).expect("finite fixture")
}
