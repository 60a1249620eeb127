fn main() {
    std::process::exit(halfhopf::cli::run());
}
