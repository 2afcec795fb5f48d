fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(atomtele_cli::run(&argv));
}
