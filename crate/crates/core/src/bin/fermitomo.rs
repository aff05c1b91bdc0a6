fn main() {
    std::process::exit(fermitomo::cli::main());
}
