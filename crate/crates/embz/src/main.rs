fn main() {
    std::process::exit(embz::cli::run(std::env::args_os()));
}
