//! Command-line surface for the `calogero` crate.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fmt;

use config::{parse_config, ConfigError};

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Core(calogero::Error),
    Io(std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Core(e) if e.is_convergence() => 3,
            RunError::Core(_) => 2,
            RunError::Io(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(msg) => write!(f, "error: {msg}"),
            RunError::Core(e) => write!(f, "error: {e}"),
            RunError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<calogero::Error> for RunError {
    fn from(e: calogero::Error) -> Self {
        RunError::Core(e)
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Usage(e.to_string().trim_start_matches("error: ").to_string())
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_config(args) {
        Ok(cfg) => cfg,
        Err(ConfigError::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let result = commands::run(&cfg).and_then(|o| {
        output::emit(&o.text, cfg.out.as_deref()).map_err(RunError::Io)?;
        Ok(o.exit)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
