use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use equiloc::cli::{exit_code, kind_code, kind_name, parse_problem_with, run, RunOptions};
use equiloc::polyalg::GroebnerConfig;
use equiloc::smith::Window;

#[derive(Parser)]
#[command(name = "equiloc", version, about = "Exact equivariant localization for diagonalizable group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every query of a problem file.
    Run {
        file: PathBuf,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Maximum number of S-polynomial reductions per Gröbner basis.
        #[arg(long, value_name = "N", default_value_t = GroebnerConfig::default().budget)]
        groebner_budget: usize,
        /// Order to which Steenrod series are checked.
        #[arg(long, value_name = "N", default_value_t = 10, value_parser = clap::value_parser!(u16).range(0..=64))]
        truncation: u16,
        /// Bidegree window for smith queries, overriding the file.
        #[arg(long, value_name = "a0..a1,b0..b1")]
        window: Option<Window>,
        /// Selects the field sizes used by the fixed-point oracle.
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version are not errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let Command::Run {
        file,
        json,
        groebner_budget,
        truncation,
        window,
        seed,
    } = cli.command;
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(1);
        }
    };
    let options = RunOptions {
        groebner_budget,
        truncation: truncation.into(),
        window,
        seed,
    };
    let config = GroebnerConfig {
        budget: groebner_budget,
        ..GroebnerConfig::default()
    };
    let problem = match parse_problem_with(&text, &config) {
        Ok(p) => p,
        Err(d) => {
            let code = kind_code(d.kind);
            if json {
                let obj = json!({
                    "schema": equiloc::cli::REPORT_SCHEMA,
                    "error": {
                        "kind": kind_name(d.kind),
                        "exit_code": code,
                        "line": d.line,
                        "column": d.column,
                        "message": d.message,
                    },
                    "exit_code": code,
                });
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            } else {
                eprintln!("{}:{}:{}: error: {}", file.display(), d.line, d.column, d.message);
            }
            return ExitCode::from(code as u8);
        }
    };
    let report = run(&problem, &options);
    if json {
        print!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(exit_code(&report) as u8)
}
