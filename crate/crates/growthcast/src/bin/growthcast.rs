fn main() {
    std::process::exit(growthcast::cli::run(std::env::args_os()));
}
