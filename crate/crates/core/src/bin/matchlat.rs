use clap::Parser;
use matchlat::cli::{run, Cli, EXIT_OK};

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            print!("{}", report.to_string_pretty());
            std::process::exit(EXIT_OK);
        }
        Err(e) => {
            eprintln!("matchlat: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
