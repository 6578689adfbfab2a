fn main() {
    std::process::exit(surfkit::cli_io::run());
}
