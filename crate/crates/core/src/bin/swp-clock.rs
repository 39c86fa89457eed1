fn main() {
    std::process::exit(swp_clock::sweep::main_with_args(std::env::args_os()));
}
