use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = rtl_harness::run(std::env::args_os());
    let _ = std::io::stdout().lock().write_all(&r.stdout);
    eprint!("{}", r.stderr);
    ExitCode::from(r.code)
}
