fn main() {
    std::process::exit(motifspectra::cli::main_with_args(std::env::args_os()));
}
