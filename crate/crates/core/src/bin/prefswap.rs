use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (result, json) = prefswap::cli::run(std::env::args_os());
    let text = match (&result.payload, json) {
        (Some(payload), true) => format!("{}\n", serde_json::to_string_pretty(payload).unwrap_or_default()),
        _ => result.report.clone(),
    };
    let mut out: Box<dyn Write> = if result.status == prefswap::cli::FAILURE {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(result.status as u8)
}
