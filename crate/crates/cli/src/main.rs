mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use infotherm_core::experiment::physical_gate;
use infotherm_core::sweep::{cmd_fig3, cmd_fig4, cmd_sweep, fig4_default_temperatures, gate_check, tomo_demo, Table};
use infotherm_core::Error;

use args::{Cli, Command, Format, GridArgs};

const EXIT_USAGE: u8 = 1;
const EXIT_FAILURE: u8 = 2;

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Numerical(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Numerical(format!("cannot write to stdout: {e}"))),
    }
}

fn run_table(args: &GridArgs, command: fn(&infotherm_core::sweep::SweepConfig) -> infotherm_core::Result<Table>, fig4: bool) -> Result<(), Failure> {
    let mut resolved = args::resolve(args).map_err(Failure::Usage)?;
    if fig4 && resolved.default_temperatures {
        resolved.config.temperatures = fig4_default_temperatures();
    }
    let table = command(&resolved.config)?;
    let text = match resolved.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(resolved.out.as_deref(), &text)?;
    if table.has_errors() {
        for e in &table.errors {
            eprintln!("error at theta_rad={} beta_inv={}: {}", e.theta, e.beta_inv, e.message);
        }
        return Err(Failure::Numerical(format!("{} grid point(s) failed", table.errors.len())));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Sweep(a) => run_table(&a, cmd_sweep, false),
        Command::Fig3(a) => run_table(&a, cmd_fig3, false),
        Command::Fig4(a) => run_table(&a, cmd_fig4, true),
        Command::TomoDemo(a) => {
            let resolved = args::resolve(&a).map_err(Failure::Usage)?;
            emit(resolved.out.as_deref(), &tomo_demo(&resolved.config)?)
        }
        Command::GateCheck(a) => {
            let mut gate = physical_gate();
            if let Some(delta) = a.perturb {
                gate = gate.perturbed(0, 3, delta);
            }
            let report = gate_check(&gate, a.theta_steps)?;
            emit(a.out.as_deref(), &report.render())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Numerical("gate check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
