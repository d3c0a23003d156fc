mod args;
mod commands;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Braid(a) => commands::braid(a),
        Command::Verify(a) => commands::verify(a),
        Command::Invariants(a) => commands::invariants(a),
        Command::Hopfion(a) => commands::hopfion(a),
        Command::Milnor(a) => commands::milnor(a),
    };
    let code = match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("knotfield: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
