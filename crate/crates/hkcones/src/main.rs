fn main() {
    std::process::exit(hkcones::cli::run(std::env::args_os()));
}
