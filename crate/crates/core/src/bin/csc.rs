use std::io::Write;

fn main() {
    let (code, out) = clause_cycles::cli::run(std::env::args_os());
    // A closed pipe is not an error of the command.
    let _ = if code == clause_cycles::cli::EXIT_ERROR {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    std::process::exit(code);
}
