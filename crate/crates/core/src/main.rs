fn main() {
    std::process::exit(nilcert::cli::main_with_args(std::env::args_os()));
}
