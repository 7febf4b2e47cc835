fn main() {
    std::process::exit(sigma3::cli::main_with_args(std::env::args_os()));
}
