fn main() -> std::process::ExitCode {
    wavesets::cli::main()
}
