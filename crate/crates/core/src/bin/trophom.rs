fn main() {
    std::process::exit(tropical_homology::cli::main_with_args(std::env::args_os()));
}
