fn main() {
    std::process::exit(quising::cli::main_entry(std::env::args_os()));
}
