fn main() {
    std::process::exit(flaghodge::cli::run(std::env::args_os()));
}
