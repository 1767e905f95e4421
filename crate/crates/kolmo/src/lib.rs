//! Command-line front end for `kolmo-core`: argument parsing, dispatch and
//! text/JSON reports.
//!
//! Exit codes: 0 for a passing or informational report, 1 when a verification
//! fails, 2 for usage errors (bad flags, unparsable expressions).

pub mod cli;
pub mod commands;
pub mod json;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use cli::{Cli, Command, GlobalOpts};
pub use commands::{dispatch, Budget, UsageError};
pub use report::{Outcome, Report};

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage(msg: &str) -> Output {
    let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
    let line = line.trim_start_matches("error: ");
    Output {
        stdout: String::new(),
        stderr: format!("error: {line}\n"),
        code: 2,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Output {
                stdout: e.to_string(),
                stderr: String::new(),
                code: 0,
            };
        }
        Err(e) => return usage(&e.to_string()),
    };
    let budget = match cli.global.budget_seconds {
        Some(s) => match Budget::seconds(s) {
            Ok(b) => b,
            Err(e) => return usage(&e.0),
        },
        None => Budget::unlimited(),
    };
    let start = Instant::now();
    let mut report = match dispatch(&cli.command, budget) {
        Ok(r) => r,
        Err(e) => return usage(&e.0),
    };
    if cli.global.timing {
        report.elapsed = Some(start.elapsed());
    }
    let stdout = if cli.global.json {
        report.render_json()
    } else {
        report.render_text()
    };
    Output {
        stdout,
        stderr: String::new(),
        code: report.exit_code(),
    }
}
