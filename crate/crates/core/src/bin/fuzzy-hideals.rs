fn main() {
    std::process::exit(fuzzy_hideals::cli::run(std::env::args_os()));
}
