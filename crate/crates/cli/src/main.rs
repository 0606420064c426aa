use std::io::Write;
use std::process::ExitCode;

use fracmap_cli::{invoke, Status};

fn main() -> ExitCode {
    let inv = invoke(std::env::args_os());
    for m in &inv.messages {
        eprintln!("{}", m.trim_end());
    }
    if let Some(text) = &inv.output {
        let written = match &inv.out_path {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("fracmap: cannot write output: {e}");
            return ExitCode::from(Status::InvalidInput as u8);
        }
    }
    ExitCode::from(inv.status as u8)
}
