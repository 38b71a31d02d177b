fn main() {
    std::process::exit(slater::cli::run())
}
