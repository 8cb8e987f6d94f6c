use std::io::Write;

fn main() {
    let (code, out) = blowdown::cli::run(std::env::args_os());
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = if code == 2 && !out.starts_with('{') {
        write!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    std::process::exit(code);
}
