fn main() {
    let outcome = qcdense::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
