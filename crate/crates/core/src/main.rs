use clap::Parser;

fn main() {
    let cli = almost_hilbert::cli::Cli::parse();
    std::process::exit(almost_hilbert::cli::execute(cli));
}
