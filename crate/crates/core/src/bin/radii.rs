use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use radii::cli::{self, RunOptions, Stage};

/// Computer-assisted proof of a connecting orbit, stage by stage.
#[derive(Parser, Debug)]
#[command(name = "radii", version)]
struct Args {
    /// equilibria, eigen, manifolds, connection, all, export-trajectory or tune.
    stage: Option<String>,
    /// Same as the positional stage.
    #[arg(long = "stage", conflicts_with = "stage")]
    stage_flag: Option<String>,
    /// TOML configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the trajectory CSV here.
    #[arg(long)]
    export_csv: Option<PathBuf>,
    #[arg(long, default_value = "info")]
    log_level: String,
}

fn main() -> ExitCode {
    let args = Args::parse();
    env_logger::Builder::new().parse_filters(&args.log_level).format_timestamp(None).init();
    let stage = match args.stage.or(args.stage_flag).as_deref().unwrap_or("all").parse::<Stage>() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    let opts = RunOptions {
        config: args.config,
        out: args.out,
        export_csv: args.export_csv,
    };
    match cli::run(stage, &opts) {
        Ok(o) => {
            if let Some(r) = &o.report {
                for c in &r.certificates {
                    let status = if c.success { "proved" } else { "FAILED" };
                    match c.r {
                        Some(r) => println!("{status:>6}  {:<11} {:<40} r = {r:.3e}", c.kind, c.label),
                        None => println!("{status:>6}  {:<11} {:<40}", c.kind, c.label),
                    }
                }
            }
            if let Some(cfg) = &o.resolved {
                print!("{}", cfg.to_toml());
            }
            eprintln!("outputs in {}", o.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
