fn main() {
    std::process::exit(affmv_cli::run(std::env::args_os()));
}
