use std::io;
use std::process::ExitCode;

use clap::Parser;
use lingua_cli::{dispatch, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = dispatch(cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
