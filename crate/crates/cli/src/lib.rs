//! Command-line front end: `build`, `params`, `verify` and `export` for
//! hypergraph-product codes stored as alist matrices plus JSON metadata.
//!
//! Exit statuses: 0 success, 1 usage, 2 I/O or parse error, 3 verification
//! failure, 4 distance budget exhausted under `--require-exact`.

pub mod alist;
pub mod args;
pub mod codedir;
pub mod codespec;
pub mod commands;
pub mod error;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, CliResult};

use args::Command;
use commands::Out;

fn dispatch(command: &Command, out: Out<'_>, err: Out<'_>) -> CliResult<()> {
    match command {
        Command::Build { target } => commands::cmd_build(target, out),
        Command::Params(a) => commands::cmd_params(a, out),
        Command::Verify(a) => commands::cmd_verify(a, out, err),
        Command::Export(a) => commands::cmd_export(a, out),
    }
}

/// Runs a parsed command, inside a dedicated thread pool when `--threads`
/// is given.
pub fn run(cli: &Cli, out: Out<'_>, err: Out<'_>) -> CliResult<()> {
    match cli.command.search().and_then(|s| s.threads) {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(&cli.command, out, err)),
        None => dispatch(&cli.command, out, err),
    }
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    match run(&cli, &mut out, &mut err) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
