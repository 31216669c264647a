fn main() {
    let outcome = tghyper::cli::run(std::env::args_os());
    std::process::exit(tghyper::cli::emit(&outcome));
}
