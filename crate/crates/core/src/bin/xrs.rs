fn main() {
    std::process::exit(xrs_core::cli::run(std::env::args_os()));
}
