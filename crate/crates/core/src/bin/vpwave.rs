fn main() {
    std::process::exit(vpwave::cli::run(std::env::args_os()));
}
