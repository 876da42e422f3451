use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use grunwald_cli::{error_kind, run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            let footer = format!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            // Timing stays out of the machine section.
            match cli.format {
                Format::Text => {
                    let _ = writeln!(out, "{footer}");
                }
                Format::Json => eprintln!("{footer}"),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a cross-check disagreed");
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error[{}]: {err:#}", error_kind(&err));
            ExitCode::from(2)
        }
    }
}
