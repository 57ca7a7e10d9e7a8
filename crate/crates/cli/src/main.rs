fn main() {
    std::process::exit(qhgp_cli::main_with_args(std::env::args_os()));
}
