fn main() {
    std::process::exit(alphacodec::cli::run());
}
