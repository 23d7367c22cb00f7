use std::io::Write;

fn main() {
    let outcome = bkzeta_cli::run(std::env::args_os());
    if !outcome.written {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(outcome.report.as_bytes());
        let _ = stdout.flush();
    }
    eprint!("{}", outcome.diagnostics);
    std::process::exit(outcome.code);
}
