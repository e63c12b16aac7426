use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use weylkit_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, diag, code) = execute(&cli);
    print!("{out}");
    eprint!("{diag}");
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
