use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = aerorisk_cli::execute_command(std::env::args_os().skip(1));
    print!("{}", result.stdout);
    let _ = std::io::stdout().flush();
    for line in &result.diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(u8::try_from(result.exit_code).unwrap_or(1))
}
