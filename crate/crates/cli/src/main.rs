//! `etale`: checks, constructions and the property suite over fixture files.

mod ops;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use etale_core::error::Error;

#[derive(Parser)]
#[command(name = "etale", version, about = "Finite étale groupoids, their sheaves, effective parts and gerbes")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a document in a fixture file.
    Check {
        #[arg(value_enum)]
        property: Property,
        file: PathBuf,
        #[command(flatten)]
        sel: Selection,
    },
    /// Run a construction and emit its result as fixture documents plus a report.
    Compute {
        #[arg(value_enum)]
        construction: Construction,
        file: PathBuf,
        #[command(flatten)]
        sel: Selection,
    },
    /// Run the property suite over the named fixtures and a seeded corpus.
    Verify {
        /// `all`, a criterion number 1-10, or a criterion name.
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Etale,
    Effective,
    Morita,
    Bouquet,
    Gerbe,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Haefliger,
    EffectivePart,
    ActionGroupoid,
    Sections,
    Cech,
    Pullback,
    Stalk,
    RealizeRepresentable,
    Theta,
    Xi,
    GerbeFromIneffective,
    EfOfRealization,
    IneffectiveIsotropy,
}

/// Names of documents inside the fixture file.
#[derive(clap::Args, Default)]
pub struct Selection {
    #[arg(long)]
    pub groupoid: Option<String>,
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub sheaf: Option<String>,
    #[arg(long)]
    pub object: Option<String>,
    #[arg(long)]
    pub hom: Option<String>,
    /// A point id of the relevant object space.
    #[arg(long)]
    pub point: Option<String>,
    /// Comma-separated point ids of an open set.
    #[arg(long)]
    pub open: Option<String>,
    /// Comma-separated centers of a cover by minimal opens (default: every point).
    #[arg(long)]
    pub centers: Option<String>,
}

/// Why a command did not produce a passing result.
pub enum Failure {
    /// Unreadable input or a document violating an invariant.
    Input(Error),
    /// A property check failed; the report carries the counterexample.
    Property(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { property, file, sel } => ops::load(file).and_then(|w| ops::check(*property, &w, sel)),
        Command::Compute { construction, file, sel } => {
            ops::load(file).and_then(|w| ops::compute(*construction, &w, sel))
        }
        Command::Verify { suite, seed, instances } => ops::verify(suite, *seed, *instances),
    };
    match outcome {
        Ok(report) => {
            emit(cli.format, &report);
            ExitCode::SUCCESS
        }
        Err(Failure::Property(report)) => {
            emit(cli.format, &report);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            let invariant = match &e {
                Error::Invalid { structure, law, .. } => json!(format!("{structure}: {law}")),
                _ => Value::Null,
            };
            emit(cli.format, &json!({ "error": e.to_string(), "invariant": invariant }));
            ExitCode::from(2)
        }
    }
}

fn emit(format: Format, report: &Value) {
    let mut text = String::new();
    match format {
        Format::Json => text = format!("{report}\n"),
        Format::Text if report.get("criteria").is_some() => render_suite(report, &mut text),
        Format::Text => render_text(report, "", &mut text),
    }
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn render_suite(report: &Value, out: &mut String) {
    for c in report["criteria"].as_array().into_iter().flatten() {
        let failures = c["failures"].as_array().map_or(0, Vec::len);
        let status = if failures == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "[{status}] {:>2}. {} ({} checks, {failures} failures, {} skipped)",
            c["id"], scalar(&c["name"]), c["checks"], c["skipped"]
        );
        for f in c["failures"].as_array().into_iter().flatten().take(5) {
            let _ = writeln!(out, "       {}", scalar(f));
        }
    }
    let _ = writeln!(out, "seed {}, {} instances", report["seed"], report["instances"]);
    if let Some(list) = report.get("counterexamples") {
        let _ = writeln!(out, "counterexamples:");
        render_text(list, "  ", out);
    }
}

fn render_text(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(out, "{indent}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{indent}{k}:");
                    render_text(x, &format!("{indent}  "), out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    let _ = writeln!(out, "{indent}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{indent}-");
                    render_text(x, &format!("{indent}  "), out);
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{indent}{}", scalar(v));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}
