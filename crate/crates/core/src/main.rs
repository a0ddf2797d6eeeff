fn main() {
    std::process::exit(qgadget::cli::main_with_args(std::env::args_os()));
}
