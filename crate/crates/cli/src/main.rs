use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use unimodal::curves::families;
use unimodal::curves::linsys::{linear_system_dim, stabilizer_dim};
use unimodal::graphs::catalog::{catalog, recompute};
use unimodal::report::{Report, ScenarioReport};
use unimodal::runner::{corpus_files, run_file};

/// Overrides the bundled corpus directory.
const CORPUS_ENV: &str = "UNIMODAL_CORPUS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "unimodal", version, about = "Exact verifier for surfaces with an exceptional unimodal double point")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    report: Format,
    /// Worker threads for scenario execution.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario file.
    Verify { file: PathBuf },
    /// Run every scenario of the corpus directory.
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Exceptional and auxiliary configurations with recomputed invariants.
    Catalog,
    /// Dimension counts of the sextic families.
    Dims,
}

fn corpus_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os(CORPUS_ENV).map(PathBuf::from))
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

fn run_all(files: &[PathBuf], jobs: usize) -> anyhow::Result<Vec<ScenarioReport>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().context("building the worker pool")?;
    Ok(pool.install(|| files.par_iter().map(|f| run_file(f)).collect()))
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn catalog_cmd(format: Format) {
    let rows: Vec<serde_json::Value> = catalog()
        .iter()
        .map(|e| {
            let (z_sq, k_dot_z, pa) = recompute(e);
            json!({
                "label": e.label,
                "components": e.config.len().to_string(),
                "Z_sq": z_sq.to_string(),
                "K_dot_Z": k_dot_z.to_string(),
                "pa_Z": pa.to_string(),
                "normal_form": e.normal_form,
            })
        })
        .collect();
    match format {
        Format::Json => print_json(&json!(rows)),
        Format::Text => {
            println!("{:<8} {:>4} {:>5} {:>5} {:>4}  normal form", "label", "n", "Z^2", "K.Z", "p_a");
            for e in catalog() {
                let (z_sq, k_dot_z, pa) = recompute(e);
                println!(
                    "{:<8} {:>4} {:>5} {:>5} {:>4}  {}",
                    e.label,
                    e.config.len(),
                    z_sq,
                    k_dot_z,
                    pa,
                    e.normal_form
                );
            }
        }
    }
}

fn dims_cmd(format: Format) -> anyhow::Result<()> {
    let mut rows = Vec::new();
    for row in families::rows() {
        let fam = row.family()?;
        rows.push((row, linear_system_dim(&fam.system) + 1, fam.params, stabilizer_dim(&fam.markings), row.count()?));
    }
    match format {
        Format::Json => {
            let out: Vec<serde_json::Value> = rows
                .iter()
                .map(|(r, coeffs, params, stab, count)| {
                    json!({
                        "row": r.label,
                        "variant": r.variant,
                        "coefficients": coeffs.to_string(),
                        "params": params.to_string(),
                        "stabilizer": stab.to_string(),
                        "count": count.to_string(),
                        "stated": r.stated_count.to_string(),
                    })
                })
                .collect();
            print_json(&json!(out));
        }
        Format::Text => {
            println!(
                "{:<7} {:<14} {:>6} {:>6} {:>5} {:>6} {:>7}",
                "row", "variant", "coeffs", "params", "stab", "count", "stated"
            );
            for (r, coeffs, params, stab, count) in &rows {
                let mark = if *count == r.stated_count { "" } else { "  (differs)" };
                println!(
                    "{:<7} {:<14} {:>6} {:>6} {:>5} {:>6} {:>7}{mark}",
                    r.label, r.variant, coeffs, params, stab, count, r.stated_count
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { file } => {
            let report = Report::new(vec![run_file(&file)]);
            emit(&report, cli.report);
            report.exit_code
        }
        Command::Corpus { dir } => {
            let dir = corpus_dir(dir);
            let result = corpus_files(&dir).map_err(anyhow::Error::from).and_then(|files| run_all(&files, cli.jobs));
            match result {
                Ok(scenarios) => {
                    let report = Report::new(scenarios);
                    emit(&report, cli.report);
                    report.exit_code
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    2
                }
            }
        }
        Command::Catalog => {
            catalog_cmd(cli.report);
            0
        }
        Command::Dims => match dims_cmd(cli.report) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e:#}");
                2
            }
        },
    };
    ExitCode::from(code)
}
