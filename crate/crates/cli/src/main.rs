mod args;
mod run;

use args::{Cli, Format};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = match run::execute(&cli.command, &cli.common) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let format = cli.common.format.unwrap_or_else(|| run::default_format(&cli.command));
    let body = match format {
        Format::Json => {
            let report = json!({
                "command": cli.command.name(),
                "inputs_digest": outcome.digest(),
                "result": outcome.result,
                "checks": outcome.checks.iter().map(|(n, p)| json!({"name": n, "pass": p})).collect::<Vec<_>>(),
                "wall_time_ms": start.elapsed().as_millis() as u64,
            });
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => match &outcome.csv {
            Some(c) => c.clone(),
            None => {
                eprintln!("error: precondition failed: this command has no csv output");
                return ExitCode::from(1);
            }
        },
    };
    if let Some(s) = &outcome.summary {
        eprint!("{s}");
        if !s.ends_with('\n') {
            eprintln!();
        }
    }
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, body.as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{body}"),
    }
    if outcome.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
