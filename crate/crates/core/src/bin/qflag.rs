fn main() {
    std::process::exit(qflag::cli::main_with(std::env::args_os()));
}
