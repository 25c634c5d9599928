fn main() {
    let out = divisorial::cli::run_args(std::env::args().skip(1));
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
