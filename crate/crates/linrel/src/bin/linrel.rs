use clap::Parser;

fn main() {
    let cli = linrel::cli::Cli::parse();
    let code = linrel::cli::run(&cli, &mut std::io::stdout());
    std::process::exit(code);
}
