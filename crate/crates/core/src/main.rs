use clap::Parser;

fn main() {
    let cli = chord_index::cli::Cli::parse();
    std::process::exit(chord_index::cli::run(cli));
}
