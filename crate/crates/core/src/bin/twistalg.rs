use std::io::Write;

fn main() {
    let out = twistalg::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    std::process::exit(out.code);
}
