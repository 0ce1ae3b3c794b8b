fn main() {
    std::process::exit(conecrit::cli::main_with_env());
}
