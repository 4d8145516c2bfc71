//! Command-line front end: text formats, the built-in catalog and report
//! rendering on top of `jjcoh-core`.

pub mod catalog;
pub mod commands;
pub mod parse;
pub mod report;

use clap::Parser;
use serde_json::{json, Value};

pub use commands::{CliError, Config};

const DEFAULT_MAX_DEGREE: usize = 4;

/// Reads `JJCOH_MAX_DEGREE`, defaulting to 4.
pub fn config_from_env() -> Result<Config, CliError> {
    match std::env::var("JJCOH_MAX_DEGREE") {
        Err(_) => Ok(Config { max_degree: DEFAULT_MAX_DEGREE }),
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_degree| Config { max_degree })
            .map_err(|_| CliError::Usage(format!("JJCOH_MAX_DEGREE: expected an integer, found {v:?}"))),
    }
}

/// Runs one invocation (`args[0]` is the program name) and returns the
/// rendered report with the exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match config_from_env() {
        Ok(cfg) => run_with(args, &cfg),
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

pub fn run_with<I, T>(args: I, cfg: &Config) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match commands::execute(&cli, cfg) {
        Ok(outcome) => (report::render(&Value::Object(outcome.report), cli.json), outcome.code),
        Err(e) => {
            let code = e.exit_code();
            let text = if cli.json {
                report::render(&json!({"error": {"kind": e.kind(), "message": e.to_string()}}), true)
            } else {
                format!("error: {e}\n")
            };
            (text, code)
        }
    }
}
