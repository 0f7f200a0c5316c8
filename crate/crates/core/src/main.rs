fn main() {
    std::process::exit(sectorix::cli::run(std::env::args_os()));
}
