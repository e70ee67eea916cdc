fn main() -> std::process::ExitCode {
    qrmark::cli::main()
}
