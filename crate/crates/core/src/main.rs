fn main() {
    std::process::exit(matslocc::cli::main_with_args(std::env::args_os()));
}
