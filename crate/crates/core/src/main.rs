fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(curveflow::cli::parse_and_dispatch(&args));
}
