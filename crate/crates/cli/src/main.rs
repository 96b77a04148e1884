use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match torsionlab_cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) if f.code == 0 => {
            print!("{}", f.message);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let msg = f.message.trim_end();
            eprintln!("error: {}", msg.strip_prefix("error: ").unwrap_or(msg));
            ExitCode::from(f.code as u8)
        }
    }
}
