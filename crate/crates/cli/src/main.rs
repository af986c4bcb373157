use std::process::ExitCode;

use clap::Parser;
use wittlab_cli::{execute, exit_code, render_text, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if cli.global.json {
                let text =
                    serde_json::to_string_pretty(&outcome.report).expect("serializable report");
                println!("{text}");
            } else {
                print!("{}", render_text(&outcome));
            }
            ExitCode::from(exit_code(&outcome.report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
