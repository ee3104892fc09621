fn main() {
    std::process::exit(coalition::cli::main());
}
