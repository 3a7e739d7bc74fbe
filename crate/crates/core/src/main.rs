fn main() {
    std::process::exit(uvbeta::cli::run(std::env::args_os()));
}
