fn main() {
    std::process::exit(cybe_core::cli::run());
}
