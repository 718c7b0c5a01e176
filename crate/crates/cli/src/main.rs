use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let code = arrowhead_cli::run(std::env::args_os(), &mut stdout.lock(), &mut io::stderr());
    ExitCode::from(code as u8)
}
