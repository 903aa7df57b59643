use serde::Serialize;

use crate::diagnostic::Diagnostic;

/// The `--json` output. Every key is always present; keys that do not apply
/// to the command are `null`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Option<&'static str>,
    /// `YES` or `NO` for `twisted`, `OK` for other answered commands,
    /// `ERROR` otherwise.
    pub verdict: String,
    pub witness: Option<String>,
    pub generators: Option<Vec<String>>,
    pub class: Option<usize>,
    pub layers: Option<Vec<usize>>,
    pub classes: Option<Vec<Vec<String>>>,
    pub reidemeister: Option<usize>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    fn with_verdict(command: Option<&'static str>, verdict: &str) -> Self {
        Report {
            command,
            verdict: verdict.to_string(),
            witness: None,
            generators: None,
            class: None,
            layers: None,
            classes: None,
            reidemeister: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn ok(command: &'static str) -> Self {
        Self::with_verdict(Some(command), "OK")
    }

    pub fn error(command: Option<&'static str>) -> Self {
        Self::with_verdict(command, "ERROR")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
