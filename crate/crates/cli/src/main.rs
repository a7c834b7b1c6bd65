use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = genreg_cli::run(std::env::args_os());
    // a closed pipe downstream is not an error worth reporting
    if let Some(text) = out.stdout {
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    if let Some(text) = out.stderr {
        let _ = writeln!(std::io::stderr().lock(), "{text}");
    }
    ExitCode::from(out.code as u8)
}
