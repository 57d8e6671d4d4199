fn main() -> std::process::ExitCode {
    gkm_fibrations::cli::run_from_env()
}
