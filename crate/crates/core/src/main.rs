fn main() {
    std::process::exit(symsemi::cli::run());
}
