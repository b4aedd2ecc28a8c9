fn main() {
    std::process::exit(topoinv_cli::cli::main_with_args(std::env::args_os()));
}
