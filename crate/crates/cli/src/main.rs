use clap::Parser;

fn main() {
    let cli = congsum::Cli::parse();
    std::process::exit(congsum::run(cli));
}
