fn main() {
    std::process::exit(mixedbad::cli::run(std::env::args_os()));
}
