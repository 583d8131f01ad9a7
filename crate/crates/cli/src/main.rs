fn main() {
    std::process::exit(skewbrace_cli::run_cli(std::env::args()));
}
