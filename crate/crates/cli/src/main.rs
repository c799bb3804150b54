use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = wdvv_cli::run(std::env::args_os());
    // Help and version text is not an error and belongs on standard output.
    if outcome.report.is_none() && outcome.exit_code == 0 {
        print!("{}", outcome.message);
    } else if !outcome.message.is_empty() {
        eprint!("{}", outcome.message);
    }
    if let Some(report) = &outcome.report {
        match serde_json::to_string_pretty(report) {
            Ok(text) => {
                // A closed pipe downstream is not worth a panic; the exit code
                // still carries the verdict.
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            Err(e) => {
                eprintln!("cannot serialize report: {e}");
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(u8::try_from(outcome.exit_code).unwrap_or(2))
}
