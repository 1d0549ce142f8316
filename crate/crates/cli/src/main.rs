fn main() {
    std::process::exit(calogero_cli::app::run(std::env::args_os()));
}
