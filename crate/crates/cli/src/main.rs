use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use molqubit_cli::{output_path, run, Cli, CliError};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match output_path(cli) {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("molqubit: {e}");
            e.exit_code()
        }
    }
}
