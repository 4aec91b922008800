fn main() {
    std::process::exit(cactus::cli::run(std::env::args_os()));
}
