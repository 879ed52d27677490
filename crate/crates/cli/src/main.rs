fn main() {
    std::process::exit(octonode_cli::run(std::env::args_os()));
}
