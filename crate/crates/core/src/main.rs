fn main() {
    std::process::exit(rdstab::cli::run());
}
