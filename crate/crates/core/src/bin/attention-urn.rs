fn main() -> std::process::ExitCode {
    attention_urn::cli::main()
}
