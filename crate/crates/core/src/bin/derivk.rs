use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = derivk_core::cli::run(std::env::args_os());
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
        let _ = std::io::stdout().flush();
    }
    ExitCode::from(code as u8)
}
