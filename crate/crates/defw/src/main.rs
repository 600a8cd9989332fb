fn main() {
    std::process::exit(defw::cli::run());
}
