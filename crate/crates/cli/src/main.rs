mod args;
mod goldens;
mod jsonfmt;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use run::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::execute(&cli.verb, cli.seed) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
