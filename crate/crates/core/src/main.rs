fn main() {
    let code = galecross::cli::run(std::env::args_os());
    std::process::exit(code);
}
