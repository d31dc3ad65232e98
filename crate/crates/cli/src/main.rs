fn main() {
    std::process::exit(crc_forge_cli::run(std::env::args_os()));
}
