fn main() {
    std::process::exit(causalflow::cli::main_with_args(std::env::args_os()));
}
