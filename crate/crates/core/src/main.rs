fn main() {
    std::process::exit(circuit_dicke::cli::run(std::env::args_os()));
}
