fn main() {
    env_logger::init();
    std::process::exit(ledgermap::cli::run(std::env::args_os()));
}
