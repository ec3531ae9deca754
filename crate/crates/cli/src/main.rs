use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use plap_cli::output::{render, Format};
use plap_cli::{execute, Cli, CliError, EXIT_USAGE};

fn run(cli: &Cli) -> Result<i32, CliError> {
    let outcome = execute(cli)?;
    let bytes = render(&outcome.report, Format::from_flags(cli.common.csv, cli.common.text))?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::Write(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| CliError::Write(e.to_string()))?,
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("plap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
