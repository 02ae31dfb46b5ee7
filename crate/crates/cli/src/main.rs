fn main() {
    std::process::exit(eigenbound_cli::main_with(std::env::args_os()));
}
