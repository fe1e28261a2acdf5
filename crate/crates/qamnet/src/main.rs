fn main() {
    std::process::exit(qamnet::cli::run(std::env::args_os()));
}
