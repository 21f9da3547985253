use std::io::Write;

use clap::Parser;

fn main() {
    let cli = arcat_cli::Cli::parse();
    let (out, code) = arcat_cli::run(&cli);
    // a closed pipe downstream is not an error of ours
    let _ = if code == arcat_cli::EXIT_USAGE || code == arcat_cli::EXIT_CAP {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    std::process::exit(code);
}
