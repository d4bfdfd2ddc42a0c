//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input/parse error,
//! 3 mathematical precondition failure.

use clap::{Parser, Subcommand};
use formlab::calculus::HarmonicFlavor;
use formlab::catalog::{self, FixedLocus, ModelRef, PointAction};
use formlab::cohomology::{ddbar_check, formality_check, Complex, Theory};
use formlab::formexpr::{format_form, parse_form};
use formlab::massey::{abc_massey, dolbeault_massey, MasseyError, MasseyResult};
use formlab::modelfile::{load_model, ModelFile};
use formlab::scalar::Scalar;
use formlab::table::{compute_table, diff_table, thread_budget, ExpectedTable};
use formlab::verify;
use std::path::Path;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MATH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "formlab",
    about = "Exact cohomology and Massey products for invariant complexes of nilmanifolds and solvmanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate or display a model.
    Model {
        #[command(subcommand)]
        action: ModelCommand,
    },
    /// Print a cohomology table.
    Cohom {
        /// Builtin name or model-file path.
        model: String,
        #[arg(long, default_value = "bc")]
        theory: String,
        /// Family parameters, e.g. -p t=1/2 (repeatable).
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
        #[arg(long, default_value = "text")]
        format: String,
        /// Expected-table JSON to diff against; mismatches exit 1.
        #[arg(long)]
        expected: Option<String>,
        /// Include representatives in text output.
        #[arg(long)]
        reps: bool,
    },
    /// Evaluate the ∂∂̄-lemma in all three formulations.
    Ddbar {
        model: String,
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
    /// Geometric formality of the harmonic algebra.
    Formality {
        model: String,
        #[arg(long, default_value = "bc")]
        flavor: String,
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
    /// Massey triple product of three classes.
    Massey {
        /// dolbeault | abc
        kind: String,
        model: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
    /// Enumerate the fixed locus of a lattice point action.
    FixedPoints {
        model: String,
        #[arg(long)]
        action: String,
    },
    /// Invariant subcomplex of a group action.
    Invariant {
        model: String,
        #[arg(long)]
        action: String,
        /// Write the per-bidegree invariant basis as JSON.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run checks across a parameter family.
    Sweep {
        family: String,
        /// K=V1,V2,... (one parameter swept).
        #[arg(short, long = "param", value_name = "K=V1,V2,...")]
        param: String,
        #[arg(long, value_delimiter = ',', default_value = "ddbar")]
        checks: Vec<String>,
    },
    /// Run the embedded verification suite.
    Verify {
        /// Only criteria whose tag contains this substring.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    Validate {
        model: String,
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
    Show {
        model: String,
        #[arg(short, long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_INPUT, msg: msg.into() }
    }

    fn math(msg: impl Into<String>) -> CliError {
        CliError { code: EXIT_MATH, msg: msg.into() }
    }
}

fn parse_params(params: &[String]) -> Result<Vec<(String, Scalar)>, CliError> {
    params
        .iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("bad --param '{p}', expected K=V")))?;
            let value: Scalar = v
                .parse()
                .map_err(|e| CliError::input(format!("bad value in --param '{p}': {e}")))?;
            Ok((k.to_string(), value))
        })
        .collect()
}

fn resolve(model: &str, params: &[String]) -> Result<Complex, CliError> {
    let params = parse_params(params)?;
    if catalog::BUILTIN_NAMES.contains(&model) {
        let r = catalog::builtin_model(model, &params).map_err(|e| match e {
            catalog::CatalogError::MissingParameter(_) => CliError::input(e.to_string()),
            catalog::CatalogError::InadmissibleParameter(_) => CliError::input(e.to_string()),
            other => CliError::math(other.to_string()),
        })?;
        let cx = r.into_complex();
        let report = cx.model.validate();
        if !report.is_ok() {
            return Err(CliError::math(format!(
                "model validation failed: {}",
                report.failures.join("; ")
            )));
        }
        return Ok(cx);
    }
    let path = Path::new(model);
    if !path.exists() {
        return Err(CliError::input(format!(
            "unknown model '{model}' (builtins: {})",
            catalog::BUILTIN_NAMES.join(", ")
        )));
    }
    let loaded = load_model(path).map_err(|e| match e {
        formlab::modelfile::ModelFileError::Invalid(msg) => {
            CliError::math(format!("model validation failed: {msg}"))
        }
        other => CliError::input(other.to_string()),
    })?;
    Ok(Complex::full(loaded))
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Model { action } => match action {
            ModelCommand::Validate { model, param } => {
                let cx = resolve(&model, &param)?;
                let report = cx.model.validate();
                println!("model {}: {}", cx.model.name, if report.is_ok() { "ok" } else { "INVALID" });
                for f in &report.failures {
                    println!("  {f}");
                }
                Ok(if report.is_ok() { EXIT_OK } else { EXIT_MATH })
            }
            ModelCommand::Show { model, param } => {
                let cx = resolve(&model, &param)?;
                let file = ModelFile::from_model(&cx.model);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&file).expect("model serializes")
                );
                if cx.is_restricted() {
                    println!("# restricted complex: invariant sub-basis in effect");
                }
                Ok(EXIT_OK)
            }
        },
        Command::Cohom { model, theory, param, format, expected, reps } => {
            let cx = resolve(&model, &param)?;
            let theory = Theory::parse(&theory)
                .ok_or_else(|| CliError::input(format!("unknown theory '{theory}'")))?;
            let report = compute_table(&cx, theory, thread_budget())
                .map_err(|e| CliError::math(e.to_string()))?;
            match format.as_str() {
                "text" => print!("{}", report.to_text(reps)),
                "csv" => print!("{}", report.to_csv()),
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("json")
                ),
                other => return Err(CliError::input(format!("unknown format '{other}'"))),
            }
            if let Some(path) = expected {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::input(format!("reading {path}: {e}")))?;
                let want: ExpectedTable = serde_json::from_str(&text)
                    .map_err(|e| CliError::input(format!("parsing {path}: {e}")))?;
                let diffs = diff_table(&report, &want, cx.model.rank);
                let mut ok = true;
                for d in diffs.iter().filter(|d| !d.ok()) {
                    ok = false;
                    println!(
                        "MISMATCH ({},{}): dim {} expected {}{}",
                        d.p,
                        d.q,
                        d.actual_dim,
                        d.expected_dim,
                        if d.note.is_empty() { String::new() } else { format!("; {}", d.note) }
                    );
                }
                if !ok {
                    return Ok(EXIT_MISMATCH);
                }
                println!("expected table matches");
            }
            Ok(EXIT_OK)
        }
        Command::Ddbar { model, param } => {
            let cx = resolve(&model, &param)?;
            let report = ddbar_check(&cx).map_err(|e| CliError::math(e.to_string()))?;
            println!(
                "ddbar-lemma: {}",
                if report.verdict() { "TRUE" } else { "FALSE" }
            );
            println!(
                "  injectivity H_BC -> H_dolbeault : {}",
                report.injectivity
            );
            println!("  subspace formulation            : {}", report.subspace_equality);
            println!("  Froelicher equality + conj     : {}", report.froelicher_equality);
            if !report.failing_cells.is_empty() {
                println!("  failing bidegrees: {:?}", report.failing_cells);
            }
            Ok(EXIT_OK)
        }
        Command::Formality { model, flavor, param } => {
            let cx = resolve(&model, &param)?;
            let flavor = match flavor.as_str() {
                "dolbeault" => HarmonicFlavor::Dolbeault,
                "bc" | "bottchern" | "bott-chern" => HarmonicFlavor::BottChern,
                other => return Err(CliError::input(format!("unknown flavor '{other}'"))),
            };
            let report = formality_check(&cx, flavor).map_err(|e| CliError::math(e.to_string()))?;
            println!(
                "geometric {} formality: {}",
                flavor.name(),
                if report.formal { "TRUE" } else { "FALSE" }
            );
            if let Some(first) = report.failures.first() {
                println!("  witness pair:");
                println!("    left    = {}", format_form(&first.left));
                println!("    right   = {}", format_form(&first.right));
                println!("    product = {}  (not harmonic)", format_form(&first.product));
                println!("  failing pairs: {}", report.failures.len());
            }
            Ok(EXIT_OK)
        }
        Command::Massey { kind, model, a, b, c, param } => {
            let cx = resolve(&model, &param)?;
            let rank = cx.model.rank;
            let parse = |label: &str, text: &str| {
                parse_form(text, rank)
                    .map_err(|e| CliError::input(format!("--{label} '{text}': {e}")))
            };
            let fa = parse("a", &a)?;
            let fb = parse("b", &b)?;
            let fc = parse("c", &c)?;
            let result = match kind.as_str() {
                "dolbeault" => dolbeault_massey(&cx, &fa, &fb, &fc),
                "abc" => abc_massey(&cx, &fa, &fb, &fc),
                other => return Err(CliError::input(format!("unknown massey kind '{other}'"))),
            };
            match result {
                Ok(r) => {
                    print_massey(&r);
                    Ok(EXIT_OK)
                }
                Err(e @ MasseyError::ProductsNotVanishing(_))
                | Err(e @ MasseyError::NotClosed(_))
                | Err(e @ MasseyError::MixedInput) => Err(CliError::math(e.to_string())),
                Err(e) => Err(CliError::math(e.to_string())),
            }
        }
        Command::FixedPoints { model, action } => {
            if model != "iwasawa" {
                return Err(CliError::input(
                    "fixed-point enumeration is defined for the iwasawa lattice".to_string(),
                ));
            }
            let action = PointAction::from_name(&action)
                .ok_or_else(|| CliError::input(format!("unknown action '{action}'")))?;
            match catalog::fixed_locus(&action) {
                FixedLocus::NotIsolated => {
                    println!("fixed locus of {}: not isolated (every point is fixed)", action.name);
                }
                FixedLocus::Points(points) => {
                    println!("fixed points of {}: {}", action.name, points.len());
                    for p in points {
                        println!("  ({}, {}, {})", p[0], p[1], p[2]);
                    }
                }
                FixedLocus::Curves(bases) => {
                    println!("fixed curves of {}: {}", action.name, bases.len());
                    for (z1, z2) in bases {
                        println!("  base ({z1}, {z2}), z3 free");
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Invariant { model, action, out } => {
            let cx = resolve(&model, &[])?;
            let restricted = catalog::invariant_subcomplex(&cx.model, &action).map_err(|e| {
                match e {
                    catalog::CatalogError::UnknownAction(_) => CliError::input(e.to_string()),
                    other => CliError::math(other.to_string()),
                }
            })?;
            let mut total = 0usize;
            let mut cells = serde_json::Map::new();
            for p in 0..=restricted.model.rank {
                for q in 0..=restricted.model.rank {
                    let mut monos = Vec::new();
                    for &s in &restricted.model.sectors {
                        for m in restricted.basis(p, q, s) {
                            monos.push(format_form(&formlab::Form::from_monomial(
                                m,
                                Scalar::one(),
                            )));
                        }
                    }
                    total += monos.len();
                    if !monos.is_empty() {
                        cells.insert(format!("{p},{q}"), serde_json::json!(monos));
                    }
                }
            }
            println!(
                "invariant subcomplex of {} under {}: dimension {}",
                model, action, total
            );
            let doc = serde_json::json!({
                "model": model,
                "action": action,
                "dimension": total,
                "cells": cells,
            });
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&doc).expect("json"))
                        .map_err(|e| CliError::input(format!("writing {path}: {e}")))?;
                    println!("wrote {path}");
                }
                None => println!("{}", serde_json::to_string_pretty(&doc).expect("json")),
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { family, param, checks } => {
            let (key, list) = param
                .split_once('=')
                .ok_or_else(|| CliError::input("expected --param K=V1,V2,...".to_string()))?;
            let mut values = Vec::new();
            if !list.is_empty() {
                for v in list.split(',') {
                    let value: Scalar = v
                        .parse()
                        .map_err(|e| CliError::input(format!("bad parameter value '{v}': {e}")))?;
                    values.push((v.to_string(), value));
                }
            }
            let mut header = format!("{key:>8}");
            for check in &checks {
                header.push_str(&format!("  {check:>20}"));
            }
            println!("{header}");
            for (label, value) in &values {
                let r = catalog::builtin_model(&family, &[(key.to_string(), value.clone())])
                    .map_err(|e| match e {
                        catalog::CatalogError::InadmissibleParameter(_) => {
                            CliError::input(e.to_string())
                        }
                        other => CliError::math(other.to_string()),
                    })?;
                let ModelRef::Plain(model) = r else {
                    return Err(CliError::input("sweep expects a plain family".to_string()));
                };
                let cx = Complex::full(model);
                let mut row = format!("{label:>8}");
                for check in &checks {
                    row.push_str(&format!("  {:>20}", verify::sweep_check(&cx, check)));
                }
                println!("{row}");
            }
            Ok(EXIT_OK)
        }
        Command::Verify { only } => {
            let results = verify::run_all(only.as_deref());
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                for d in &r.details {
                    println!("    {d}");
                }
                all_ok &= r.passed;
            }
            if results.is_empty() {
                println!("no criteria match the filter");
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn print_massey(r: &MasseyResult) {
    println!("kind           : {}", r.kind.name());
    println!("verdict        : {}", r.verdict.name());
    println!("representative : {}", format_form(&r.representative));
    println!(
        "target         : {} at ({}, {})",
        r.target.0.name(),
        r.target.1,
        r.target.2
    );
    println!("indeterminacy  : dimension {}", r.indeterminacy.dim());
    println!("primitive ab   : {}", format_form(&r.primitive_ab));
    println!("primitive bc   : {}", format_form(&r.primitive_bc));
    if let Some(w) = &r.witness {
        let rendered: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        println!("witness coeffs : [{}]", rendered.join(", "));
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe consumer (e.g. `head`) closes stdout
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
