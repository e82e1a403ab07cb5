fn main() {
    std::process::exit(brieskorn_lab::cli::main_with_args(std::env::args_os()));
}
