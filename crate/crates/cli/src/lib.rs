//! Command-line front end for the `thinsheet` library.
//!
//! The parsers in [`grid`], [`material`], [`config`] and [`table`] are public
//! so the fuzz targets can drive them directly.

pub mod args;
pub mod commands;
pub mod config;
pub mod grid;
pub mod material;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{CliError, Outcome};

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Reflect(a) => commands::cmd_sweep(a, true),
        Command::Sweep(a) => commands::cmd_sweep(a, false),
        Command::SlabLimit(a) => commands::cmd_slab_limit(a),
        Command::Lattice(a) => commands::cmd_lattice(&a.query),
        Command::Dispersion(a) => commands::cmd_dispersion(a),
    }
}

fn emit(outcome: &Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = match outcome.format {
        Format::Csv => table::render_csv(&outcome.report),
        Format::Json => table::render_json(&outcome.report),
    };
    match &outcome.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status: 0 success, 1 usage, 2 numeric failure, 3 failed check.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "thinsheet: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = emit(&outcome, stdout) {
        let _ = writeln!(stderr, "thinsheet: {e}");
        return e.exit_code();
    }
    match &outcome.failure {
        Some(e) => {
            let _ = writeln!(stderr, "thinsheet: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
