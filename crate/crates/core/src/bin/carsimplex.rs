fn main() {
    std::process::exit(carrying_simplex::cli::run(std::env::args_os()));
}
