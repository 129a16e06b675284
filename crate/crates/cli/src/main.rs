mod cli;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use gradfuzz::training::GradcheckSizes;

use cli::{Cli, Command};
use commands::{Failure, EXIT_USAGE};

fn run(cli: Cli) -> Result<u8, Failure> {
    let data_dir = cli.data_dir.as_path();
    match &cli.command {
        Command::Fetch { dataset } => commands::fetch(dataset, data_dir),
        Command::Train {
            dataset,
            hyper,
            out,
            loss_curve,
        } => commands::train(
            dataset,
            hyper,
            cli.seed,
            data_dir,
            out,
            loss_curve.as_deref(),
        ),
        Command::Benchmark {
            dataset,
            hyper,
            report_dir,
        } => commands::benchmark(dataset, hyper, cli.seed, data_dir, report_dir),
        Command::Explain {
            model,
            input,
            k,
            format,
        } => commands::explain(model, input.as_deref(), *k, *format),
        Command::Gradcheck {
            h,
            cases,
            max_dim,
            max_batch,
        } => commands::gradcheck(
            cli.seed,
            *h,
            GradcheckSizes {
                cases: *cases,
                max_dim: *max_dim,
                max_batch: *max_batch,
            },
        ),
        Command::Dump { dataset, out } => commands::dump(dataset, data_dir, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
