fn main() {
    std::process::exit(resetlab_cli::run(std::env::args_os()));
}
