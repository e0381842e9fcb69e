fn main() {
    std::process::exit(gandy_hyland::cli::main_with_args(std::env::args_os()));
}
