fn main() { std::process::exit(hyperzeta::cli::run()); }
