use std::io;
use std::process::ExitCode;

use clap::Parser;

use supercauchy::cli::{execute, Cli};

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("SUPERCAUCHY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool configured once");
    }
    let cli = Cli::parse();
    let code = match execute(cli, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("i/o error: {e}");
            2
        }
    };
    ExitCode::from(code as u8)
}
