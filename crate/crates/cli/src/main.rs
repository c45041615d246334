use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = gkset_cli::dispatch(std::env::args_os());
    print!("{}", out.report);
    eprint!("{}", out.diagnostics);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.exit_code as u8)
}
