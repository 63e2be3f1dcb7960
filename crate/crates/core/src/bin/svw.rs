fn main() {
    std::process::exit(svw_core::cli::run(std::env::args_os()));
}
