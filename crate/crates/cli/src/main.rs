fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("MULTITURAN_LOG", "error")).init();
    std::process::exit(multituran_cli::run(std::env::args_os()));
}
