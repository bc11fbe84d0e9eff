use clap::Parser;
use ricciflow::cli::{self, Command};
use ricciflow::Error;

/// Curvature and Ricci-flow diagnostics for left-invariant metrics on Lie
/// groups given by structure constants.
#[derive(Parser)]
#[command(name = "ricciflow", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("RICCIFLOW_LOG")).init();
    let args = Args::parse();
    if let Err(err) = cli::run(&args.command) {
        eprintln!("error: {err}");
        let code = match err {
            Error::Io(_) => 1,
            _ => 2,
        };
        std::process::exit(code);
    }
}
