//! Command-line front end for twisted conjugacy and equalizer queries on
//! polycyclic presentations of nilpotent groups.

pub mod diagnostic;
pub mod document;
mod input;
mod report;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use twistcon_core::equalizer::equalizer_of;
use twistcon_core::oracle::{brute_classes, enumerate, DEFAULT_ORACLE_LIMIT};
use twistcon_core::twisted::decide_in;
use twistcon_core::{Decision, DEFAULT_MAX_CLASS};

pub use diagnostic::{Diagnostic, Span};
pub use input::{load_map, load_presentation, load_word, LoadedGroup};
pub use report::Report;

pub const EXIT_ANSWERED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "twistcon", version, about = "Twisted conjugacy and equalizers in f.g. nilpotent groups")]
struct Cli {
    /// Emit a JSON object instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Largest nilpotency class accepted
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CLASS, value_name = "N")]
    max_class: usize,
    /// Largest group order the `classes` enumeration accepts
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_LIMIT, value_name = "N")]
    oracle_limit: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify consistency and nilpotency; report the class and layer sizes
    Check { group: String },
    /// Generators of the equalizer {x : x phi = x psi}
    Eq(MapPair),
    /// Decide whether some x has (x phi) u = v (x psi)
    Twisted {
        #[command(flatten)]
        maps: MapPair,
        /// Word for u; "" is the identity
        #[arg(short = 'u', allow_hyphen_values = true)]
        u: String,
        /// Word for v; "" is the identity
        #[arg(short = 'v', allow_hyphen_values = true)]
        v: String,
    },
    /// Twisted conjugacy classes and Reidemeister number of a finite group
    Classes(MapPair),
}

#[derive(Args, Debug)]
struct MapPair {
    group: String,
    phi: String,
    psi: String,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Eq(_) => "eq",
            Command::Twisted { .. } => "twisted",
            Command::Classes(_) => "classes",
        }
    }
}

/// Process result: exit code and the text destined for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed invocation: exit code plus what went wrong.
#[derive(Clone, Debug)]
pub struct Failure {
    pub code: i32,
    pub diagnostics: Vec<Diagnostic>,
}

impl Failure {
    pub fn usage(d: Diagnostic) -> Self {
        Failure { code: EXIT_USAGE, diagnostics: vec![d] }
    }

    pub fn invalid(d: Diagnostic) -> Self {
        Failure { code: EXIT_INVALID, diagnostics: vec![d] }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_ANSWERED, stdout: text, stderr: String::new() };
            }
            let mut stdout = String::new();
            if args.iter().any(|a| a == "--json") {
                let mut r = Report::error(None);
                r.diagnostics.push(Diagnostic::new(usage_message(&text)));
                stdout = r.to_json();
            }
            return Outcome { code: EXIT_USAGE, stdout, stderr: text };
        }
    };

    let command = cli.command.name();
    match execute(&cli) {
        Ok((report, text)) => {
            let stdout = if cli.json { report.to_json() } else { text };
            Outcome { code: EXIT_ANSWERED, stdout, stderr: String::new() }
        }
        Err(f) => {
            let stderr: String = f.diagnostics.iter().map(|d| format!("error: {d}\n")).collect();
            let stdout = if cli.json {
                let mut r = Report::error(Some(command));
                r.diagnostics = f.diagnostics;
                r.to_json()
            } else {
                String::new()
            };
            Outcome { code: f.code, stdout, stderr }
        }
    }
}

/// The first paragraph of a clap error, on one line.
fn usage_message(rendered: &str) -> String {
    let head = rendered.split("\n\n").next().unwrap_or(rendered);
    let words: Vec<&str> = head.split_whitespace().collect();
    words.join(" ").trim_start_matches("error: ").to_string()
}

fn execute(cli: &Cli) -> Result<(Report, String), Failure> {
    let command = cli.command.name();
    match &cli.command {
        Command::Check { group } => {
            let g = load_presentation(group, cli.max_class)?;
            let mut report = Report::ok(command);
            report.class = Some(g.refined.class());
            report.layers = Some(g.refined.layer_sizes());
            let layers: Vec<String> = g.refined.layer_sizes().iter().map(ToString::to_string).collect();
            let text = format!(
                "group {}: consistent, nilpotent of class {}\nlayers {}\n",
                g.name,
                g.refined.class(),
                layers.join(" ")
            );
            Ok((report, text))
        }
        Command::Eq(maps) => {
            let g = load_presentation(&maps.group, cli.max_class)?;
            let phi = load_map(&maps.phi, &g)?;
            let psi = load_map(&maps.psi, &g)?;
            let eq = equalizer_of(&g.refined, &phi, &psi);
            let words: Vec<String> = eq.sequence().iter().map(|x| g.pc.format_element(x)).collect();
            let mut report = Report::ok(command);
            report.class = Some(g.refined.class());
            report.generators = Some(words.clone());
            let text: String = words.iter().map(|w| format!("{w}\n")).collect();
            Ok((report, text))
        }
        Command::Twisted { maps, u, v } => {
            let g = load_presentation(&maps.group, cli.max_class)?;
            let phi = load_map(&maps.phi, &g)?;
            let psi = load_map(&maps.psi, &g)?;
            let u = load_word(&g, "-u", u)?;
            let v = load_word(&g, "-v", v)?;
            let decision = decide_in(&g.refined, &phi, &psi, &u, &v)
                .map_err(|e| Failure::invalid(Diagnostic::new(e.to_string())))?;
            let mut report = Report::ok(command);
            report.class = Some(g.refined.class());
            let text = match &decision {
                Decision::Conjugate { witness } => {
                    let w = g.pc.format_element(witness);
                    report.verdict = "YES".into();
                    report.witness = Some(w.clone());
                    format!("YES {w}\n")
                }
                Decision::NonConjugate => {
                    report.verdict = "NO".into();
                    "NO\n".into()
                }
            };
            Ok((report, text))
        }
        Command::Classes(maps) => {
            let g = load_presentation(&maps.group, cli.max_class)?;
            let phi = load_map(&maps.phi, &g)?;
            let psi = load_map(&maps.psi, &g)?;
            let e = enumerate(&g.pc, cli.oracle_limit).map_err(|err| {
                Failure::invalid(Diagnostic::new(format!("classes needs a finite group: {err}")).in_file(&maps.group))
            })?;
            let classes = brute_classes(&e, &phi, &psi);
            let words: Vec<Vec<String>> =
                classes.iter().map(|c| c.iter().map(|x| g.pc.format_element(x)).collect()).collect();
            let mut report = Report::ok(command);
            report.class = Some(g.refined.class());
            report.reidemeister = Some(words.len());
            let mut text: String = words.iter().map(|c| format!("{{{}}}\n", c.join(", "))).collect();
            text.push_str(&format!("reidemeister {}\n", words.len()));
            report.classes = Some(words);
            Ok((report, text))
        }
    }
}
