use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use wl_schreier::experiment::{
    dump_config, list_examples, load_config, refine, run_experiment, Check, ExperimentError, Report,
    RunOptions,
};

/// Weisfeiler-Leman refinement experiments on Schreier and Cayley graphs.
#[derive(Parser)]
#[command(name = "wl-schreier", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more experiment specs and write the report.
    Run {
        /// Experiment spec (JSON); repeat for a corpus run.
        #[arg(long = "spec", required = true)]
        specs: Vec<PathBuf>,
        /// Report destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Leave per-iteration configurations out of the report.
        #[arg(long)]
        no_snapshots: bool,
        /// Omit the timestamp so reports are byte-identical across runs.
        #[arg(long)]
        no_timestamp: bool,
        /// Comma-separated checks overriding the spec's list.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Option<Vec<Check>>,
        /// Also write a one-row-per-instance CSV summary.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the built-in instance kinds with example specs.
    Examples,
    /// Write the iteration-0 configuration of a spec.
    Dump {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine a dumped configuration and write its trace.
    Refine {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        no_snapshots: bool,
    },
}

fn parse_check(s: &str) -> Result<Check, String> {
    Check::parse(s.trim()).ok_or_else(|| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{s}` (expected one of {})", names.join(", "))
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    spec: String,
    name: &'a str,
    kind: &'a str,
    vertices: Option<usize>,
    diameter: Option<usize>,
    graph_diameter: Option<usize>,
    wl_count: Option<usize>,
    passed: Option<bool>,
    exit_code: i32,
    error: String,
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn read(path: &Path) -> Result<String, ExperimentError> {
    fs::read_to_string(path).map_err(|e| ExperimentError::Parse(format!("{}: {e}", path.display())))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<i32, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            specs,
            out,
            max_iter,
            no_snapshots,
            no_timestamp,
            checks,
            csv,
        } => {
            let opts = RunOptions {
                max_iter,
                snapshots: !no_snapshots,
                timestamp: !no_timestamp,
                checks,
            };
            let mut code = 0;
            let mut reports: Vec<Report> = Vec::new();
            let mut rows = Vec::new();
            for path in &specs {
                let outcome = read(path).and_then(|text| run_experiment(&text, &opts));
                let spec = path.display().to_string();
                match outcome {
                    Ok(report) => {
                        code = code.max(report.exit_code());
                        rows.push((spec, Ok(report.clone())));
                        reports.push(report);
                    }
                    Err(e) => {
                        eprintln!("{}: {e}", path.display());
                        code = code.max(e.exit_code());
                        rows.push((spec, Err(e)));
                    }
                }
            }
            let text = match reports.as_slice() {
                [single] if specs.len() == 1 => single.to_json(),
                [] if specs.len() == 1 => String::new(),
                many => to_pretty(&many),
            };
            if !text.is_empty() {
                write_output(out.as_deref(), &text)?;
            }
            if let Some(csv_path) = csv {
                let mut w = csv::Writer::from_path(csv_path)?;
                for (spec, outcome) in &rows {
                    let row = match outcome {
                        Ok(r) => CsvRow {
                            spec: spec.clone(),
                            name: r.name.as_deref().unwrap_or(""),
                            kind: &r.instance.kind,
                            vertices: Some(r.instance.vertices),
                            diameter: Some(r.diameter),
                            graph_diameter: Some(r.graph_diameter),
                            wl_count: Some(r.wl_count),
                            passed: Some(r.passed),
                            exit_code: r.exit_code(),
                            error: String::new(),
                        },
                        Err(e) => CsvRow {
                            spec: spec.clone(),
                            name: "",
                            kind: "",
                            vertices: None,
                            diameter: None,
                            graph_diameter: None,
                            wl_count: None,
                            passed: None,
                            exit_code: e.exit_code(),
                            error: e.to_string(),
                        },
                    };
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            Ok(code)
        }
        Command::Examples => {
            write_output(None, &to_pretty(&list_examples()))?;
            Ok(0)
        }
        Command::Dump { spec, out } => match read(&spec).and_then(|t| dump_config(&t)) {
            Ok(doc) => {
                write_output(out.as_deref(), &to_pretty(&doc))?;
                Ok(0)
            }
            Err(e) => {
                eprintln!("{}: {e}", spec.display());
                Ok(e.exit_code())
            }
        },
        Command::Refine {
            config,
            out,
            max_iter,
            no_snapshots,
        } => match read(&config)
            .and_then(|t| load_config(&t))
            .and_then(|c| refine(&c, max_iter, !no_snapshots))
        {
            Ok(report) => {
                write_output(out.as_deref(), &to_pretty(&report))?;
                Ok(0)
            }
            Err(e) => {
                eprintln!("{}: {e}", config.display());
                Ok(e.exit_code())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
