fn main() {
    std::process::exit(ensemble_sum::cli::run(std::env::args_os()));
}
