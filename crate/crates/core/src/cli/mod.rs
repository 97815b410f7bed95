//! The `equiloc` command line: problem files in, deterministic reports out.

mod problem;
mod run;

pub use problem::{parse_problem, parse_problem_with, Diagnostic, MAX_POWER, GroupSpec, ProblemFile, Query, Variable};
pub use run::{
    exit_code, kind_code, kind_name, run, run_query, OracleOutcome, OracleStatus, QueryOutput, Report, RunOptions, Section,
    REPORT_SCHEMA,
};
