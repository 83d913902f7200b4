use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use specseq::scenarios::{self, analyze_file, parse_field, render_chart, ChartFormat, ChartRequest, ChartSs, Overrides, Report, ScenarioSpec, Slice, Status};
use specseq::suite::run_property_suite;

#[derive(Parser)]
#[command(name = "specseq", version, about = "Eilenberg-Moore and Leray-Serre spectral sequences of bar constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered scenarios.
    List,
    /// Run a scenario by name or from a TOML file and evaluate its checks.
    Run {
        scenario: String,
        #[arg(long, value_parser = ["q", "f2", "f3", "f5"])]
        field: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_word: Option<usize>,
        #[arg(long)]
        pages: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one page of a saved report.
    Chart {
        report: PathBuf,
        #[arg(long, value_parser = parse_ss)]
        ss: ChartSs,
        #[arg(long)]
        page: usize,
        /// `s=K` or `t=K`.
        #[arg(long, value_parser = parse_slice)]
        slice: Option<Slice>,
        #[arg(long, default_value = "ascii", value_parser = parse_format)]
        format: ChartFormat,
    },
    /// Predict degeneration pages for a morphism of algebras.
    Analyze {
        morphism: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Run the randomized property suite.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn parse_ss(s: &str) -> Result<ChartSs, String> {
    s.parse().map_err(|e: specseq::Error| e.to_string())
}

fn parse_slice(s: &str) -> Result<Slice, String> {
    s.parse().map_err(|e: specseq::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ChartFormat, String> {
    s.parse().map_err(|e: specseq::Error| e.to_string())
}

fn load_scenario(name: &str) -> Result<ScenarioSpec> {
    let path = Path::new(name);
    if path.extension().is_some_and(|e| e == "toml") && path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(ScenarioSpec::parse(&text)?);
    }
    Ok(scenarios::scenario(name)?)
}

fn print_report(report: &Report) {
    println!("scenario {} over {}", report.scenario, report.field);
    for seq in report.sequences.iter().filter(|s| s.name == "em" || s.name == "ls") {
        let page = seq.degeneration.page.map_or("beyond the computed pages".to_string(), |p| format!("E{p}"));
        let cert = if seq.degeneration.certified { "certified" } else { "uncertified" };
        println!("  {} degenerates at {page} ({cert})", seq.name);
    }
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        if c.detail.is_empty() {
            println!("  {tag} {}", c.name);
        } else {
            println!("  {tag} {}: {}", c.name, c.detail);
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::List => {
            for spec in scenarios::registry() {
                println!("{:<20} {}", spec.name, spec.description);
            }
            Ok(true)
        }
        Command::Run { scenario, field, max_degree, max_word, pages, out } => {
            let field = field.as_deref().map(parse_field).transpose()?;
            let spec = Overrides { field, max_degree, max_word, pages }.apply(&load_scenario(&scenario)?);
            let report = scenarios::run_scenario(&spec)?;
            print_report(&report);
            if let Some(out) = out {
                std::fs::write(&out, report.to_json()).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(report.passed())
        }
        Command::Chart { report, ss, page, slice, format } => {
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let report = Report::from_json(&text)?;
            print!("{}", render_chart(&report, &ChartRequest { ss, page, slice, format })?);
            Ok(true)
        }
        Command::Analyze { morphism, bound } => {
            let text = std::fs::read_to_string(&morphism).with_context(|| format!("reading {}", morphism.display()))?;
            let analysis = analyze_file(&text, bound)?;
            println!("{}", serde_json::to_string_pretty(&analysis)?);
            println!("{}", analysis.summary());
            Ok(true)
        }
        Command::Fuzz { seed, cases } => {
            let report = run_property_suite(seed, cases);
            for (property, n) in &report.checked {
                let failed = report.failures.iter().filter(|f| &f.property == property).count();
                println!("{:<32} {n:>5} checked, {failed} failed", property);
            }
            for f in &report.failures {
                println!("seed {}: {}: {}", f.seed, f.property, f.detail);
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
