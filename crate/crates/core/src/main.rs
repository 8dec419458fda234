use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use flagtopo::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    print!("{}", outcome.stdout);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::File::create(path).and_then(|mut f| f.write_all(outcome.stdout.as_bytes())) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(flagtopo::cli::EXIT_INTERNAL);
        }
    }
    ExitCode::from(outcome.code)
}
