fn main() {
    std::process::exit(susyms::cli::main_with_args(std::env::args_os()));
}
