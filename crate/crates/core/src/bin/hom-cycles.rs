use clap::Parser;
use hom_cycles::cli::{run, Cli};

fn main() {
    let outcome = run(Cli::parse());
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprintln!("error: {}", outcome.stderr);
    }
    std::process::exit(outcome.status);
}
