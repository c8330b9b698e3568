use clap::Parser;

fn main() {
    let cli = framelab::cli::Cli::parse();
    std::process::exit(framelab::cli::run(cli));
}
