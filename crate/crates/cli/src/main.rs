fn main() {
    std::process::exit(dspec_cli::main_with_args(std::env::args_os()));
}
