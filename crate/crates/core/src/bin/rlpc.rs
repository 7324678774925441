use std::fs;
use std::process::ExitCode;

use clap::Parser;
use rlpc::cli::{exit_code, output_path, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match output_path(&cli) {
        Some(path) => fs::write(path, text).map_err(Into::into),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rlpc: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
