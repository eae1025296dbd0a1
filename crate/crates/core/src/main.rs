fn main() -> std::process::ExitCode {
    hylleraas_entropy::cli::run()
}
