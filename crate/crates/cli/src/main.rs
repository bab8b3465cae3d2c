fn main() {
    std::process::exit(cellq_cli::run(std::env::args_os()));
}
