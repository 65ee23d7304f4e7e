fn main() {
    std::process::exit(pc_fec::cli::run(std::env::args_os()));
}
