fn main() {
    std::process::exit(hallforge_cli::main_with_args(std::env::args_os()));
}
