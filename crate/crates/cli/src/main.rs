fn main() {
    std::process::exit(calogero_cli::run(std::env::args_os()));
}
