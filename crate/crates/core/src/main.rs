fn main() {
    std::process::exit(eigentrack::cli::main_from_args(std::env::args_os()));
}
