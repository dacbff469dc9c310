fn main() -> std::process::ExitCode {
    thermoconv::cli::main()
}
