fn main() {
    std::process::exit(mvw_cli::run(std::env::args_os()));
}
