fn main() {
    std::process::exit(polycf::cli::run(std::env::args_os()));
}
