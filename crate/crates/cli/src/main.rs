mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit code classes beyond clap's usage error (2).
pub const EXIT_IO: u8 = 3;
pub const EXIT_INVALID: u8 = 4;
pub const EXIT_NOT_INTERIOR: u8 = 5;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
        if let Some(e) = cause.downcast_ref::<heisenhardy::Error>() {
            return match e {
                heisenhardy::Error::NotInterior => EXIT_NOT_INTERIOR,
                _ => EXIT_INVALID,
            };
        }
    }
    EXIT_INVALID
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("HEISENHARDY_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not size the thread pool: {e}");
                }
            }
            _ => log::warn!("ignoring HEISENHARDY_THREADS={n}: expected a positive integer"),
        }
    }
    match commands::run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
