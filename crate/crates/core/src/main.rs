fn main() {
    std::process::exit(zeta_borel::cli::run(std::env::args_os()));
}
