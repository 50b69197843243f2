fn main() {
    std::process::exit(dvl::cli::run(std::env::args_os()));
}
