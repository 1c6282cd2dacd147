use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use krbound_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error ({}): {e}", e.reason());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let out = run(&config, &mut std::io::stdin().lock());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
