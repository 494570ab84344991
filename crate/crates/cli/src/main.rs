fn main() {
    std::process::exit(rootdatum_cli::run(std::env::args_os()));
}
