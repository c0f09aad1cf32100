use clap::Parser;
use hopf_cli::{main_with, Cli, Engine};

fn main() {
    let cli = Cli::parse();
    let code = main_with(
        &cli,
        Engine::default(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
