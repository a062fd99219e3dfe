fn main() {
    std::process::exit(theta_asym::cli::run(std::env::args_os()));
}
