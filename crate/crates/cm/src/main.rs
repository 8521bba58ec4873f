fn main() {
    std::process::exit(cm::run(std::env::args_os()));
}
