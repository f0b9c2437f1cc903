fn main() {
    std::process::exit(equitor::cli::run());
}
