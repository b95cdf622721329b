fn main() {
    std::process::exit(erasure_retrieval::cli::run());
}
