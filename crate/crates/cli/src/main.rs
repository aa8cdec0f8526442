use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use jkm::{exit_code, run, Cli, Format, TABLE_HEADER};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let table = cli.flags.format == Format::Table;
    if table {
        let _ = writeln!(out, "{TABLE_HEADER}");
    }
    let mut sink = |r: &jkm::Report| {
        let line = if table { r.to_table_row() } else { r.to_json_line() };
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
    };
    match run(&cli, &mut sink) {
        Ok(worst) => ExitCode::from(exit_code(worst) as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
