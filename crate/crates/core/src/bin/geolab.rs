fn main() {
    std::process::exit(geodesic_lab::cli::main_with_args(std::env::args_os()));
}
