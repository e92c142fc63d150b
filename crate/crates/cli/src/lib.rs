//! Command-line front end. Each subcommand reads its inputs, calls into
//! `entropy_core`, and writes CSV / text outputs.

mod args;
mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command};
pub use config::ConfigError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_INVALID_SPEC: i32 = 4;
pub const EXIT_DOMAIN_ESCAPE: i32 = 5;

/// Exit status for an error raised while running a subcommand.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use entropy_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::NonConvergence { .. } | E::OverflowGuard { .. }) => EXIT_NON_CONVERGENCE,
        Some(E::InvalidSpec(_)) => EXIT_INVALID_SPEC,
        Some(E::DomainEscape { .. }) => EXIT_DOMAIN_ESCAPE,
        _ => EXIT_CONFIG,
    }
}

fn error_tag(code: i32) -> &'static str {
    match code {
        EXIT_NON_CONVERGENCE => "NON_CONVERGENCE",
        EXIT_INVALID_SPEC => "INVALID_SPEC",
        EXIT_DOMAIN_ESCAPE => "DOMAIN_ESCAPE",
        _ => "CONFIG_ERROR",
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match commands::dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error[{}]: {e:#}", error_tag(code));
            code
        }
    }
}
