fn main() {
    std::process::exit(parabound_cli::run(std::env::args_os()));
}
