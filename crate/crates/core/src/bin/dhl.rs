fn main() {
    std::process::exit(dhl::cli::run(std::env::args_os()));
}
