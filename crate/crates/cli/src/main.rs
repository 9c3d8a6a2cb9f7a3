use std::process::ExitCode;

use clap::Parser;
use snort_cli::cli::{run, Cli, Command, EXIT_ERROR};
use tracing_subscriber::EnvFilter;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Serve(args) => {
            tracing_subscriber::fmt()
                .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
                .init();
            let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
            match runtime.block_on(snort_cli::service::serve(args)) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_ERROR
                }
            }
        }
        command => run(command, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()),
    };
    ExitCode::from(code as u8)
}
