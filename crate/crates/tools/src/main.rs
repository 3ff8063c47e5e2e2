use std::process::ExitCode;

use clap::Parser;
use pillar_tools::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}
