//! The `dspec` command line.
//!
//! Exit codes: 0 success, 1 verification or numerical failure, 2 parameters
//! outside the admissible region (`zeta * omega >= 1`), 3 I/O or
//! configuration error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use dspec_core::spectrum::QuantumNumbers;

use args::{resolve, Cli, Command};
pub use error::{CliError, CliResult};

/// Worker count from `DSPEC_THREADS`; `None` means hardware parallelism.
fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var("DSPEC_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!(
                "DSPEC_THREADS must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    pool.install(|| dispatch(cli.command))
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Spectrum(a) => {
            let c = resolve(&a.physics, Some(&a.levels), Some(&a.output), None)?;
            emit(&commands::spectrum(&c)?.render(c.format), c.out.as_deref())
        }
        Command::Sweep(a) => {
            let t = &a.table;
            let c = resolve(&t.physics, Some(&t.levels), Some(&t.output), Some(&a))?;
            emit(&commands::sweep(&c)?.render(c.format), c.out.as_deref())
        }
        Command::Wavefunction(a) => {
            let c = resolve(&a.physics, None, Some(&a.output), None)?;
            let qn = QuantumNumbers::new(a.n, a.l, a.spin);
            let table = commands::wavefunction(&c, qn, a.samples)?;
            emit(&table.render(c.format), c.out.as_deref())
        }
        Command::Geometry(a) => {
            let c = resolve(&a.physics, None, Some(&a.output), None)?;
            emit(
                &commands::geometry(&c, a.rho)?.render(c.format),
                c.out.as_deref(),
            )
        }
        Command::Verify(a) => {
            let report = commands::verify(a.full, a.inject_fault);
            println!("{report}");
            match report.failures().count() {
                0 => Ok(()),
                n => Err(CliError::Verification(n)),
            }
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors; usage errors are
            // configuration errors, not clap's default code 2
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("dspec: {e}");
            e.exit_code()
        }
    }
}
