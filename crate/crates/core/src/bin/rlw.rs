fn main() {
    env_logger::init();
    std::process::exit(rlw_core::cli::run_cli(std::env::args_os()));
}
