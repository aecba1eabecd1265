mod commands;
mod error;
mod flags;
mod input;
mod registry;

use std::process::ExitCode;

use clap::error::ErrorKind;

fn main() -> ExitCode {
    let reg = commands::registry();
    let matches = match reg.cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match reg.dispatch(&matches) {
        Ok(v) => {
            print!("{}", hwcyclic::json::render(&v));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hwcyclic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
