use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let status = truthkernel_cli::run(&args, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(status)
}
