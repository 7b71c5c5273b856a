use std::io;

fn main() {
    let code = matpw::cli::run_command(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
