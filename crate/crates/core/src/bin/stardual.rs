fn main() {
    std::process::exit(stardual::cli::main_with(std::env::args_os()));
}
