fn main() {
    std::process::exit(stein_shrink_cli::run(std::env::args_os()));
}
