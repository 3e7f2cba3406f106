fn main() {
    std::process::exit(cayley_lines::cli::run(std::env::args_os()));
}
