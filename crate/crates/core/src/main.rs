use clap::Parser;

fn main() {
    let args = georadon::cli::Args::parse();
    std::process::exit(georadon::cli::execute(&args));
}
