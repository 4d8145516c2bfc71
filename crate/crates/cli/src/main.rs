use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (text, code) = jjcoh::run(std::env::args_os());
    let written = if code == 0 {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
