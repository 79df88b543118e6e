mod commands;
mod config;
mod exit;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = &cli.run;
    let result = match &cli.command {
        Command::CriticalPoints => commands::critical_points(args),
        Command::Integrate { json } => commands::integrate_cmd(args, json),
        Command::Classify { input } => commands::classify_cmd(args, input),
        Command::Sweep { n, theta, theta0, theta1 } => commands::sweep_cmd(args, *n, theta, theta0, theta1),
        Command::Reconstruct { input } => commands::reconstruct_cmd(args, input),
        Command::Certify { target, max_depth, radius } => commands::certify_cmd(args, target, *max_depth, radius),
        Command::Verify => {
            let (report, ok) = verify::run();
            let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"));
            match &args.out {
                Some(p) => std::fs::write(p, text).map(|_| ()).map_err(|e| exit::Failure::Io(e.to_string())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
            .map(|_| if ok { exit::OK } else { exit::NOT_CONVERGED })
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.report());
            ExitCode::from(f.code())
        }
    }
}
