use harmonic_crown::cli;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match cli::parse_args(&args) {
        Ok((command, config)) => cli::run(command, config),
        Err(message) => {
            eprintln!("{message}");
            cli::EXIT_CONFIG_ERROR
        }
    };
    std::process::exit(code);
}
