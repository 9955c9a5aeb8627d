fn main() {
    std::process::exit(bratteli::cli::run(std::env::args_os()));
}
