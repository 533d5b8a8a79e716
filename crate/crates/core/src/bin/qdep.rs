fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(qdep_core::cli::run(&argv));
}
