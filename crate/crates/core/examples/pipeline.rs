//! Drive the staged pipeline from a TOML config, as the `radii` binary does.
//!
//! Usage: `cargo run --release --example pipeline [config.toml] [out-dir]`

use std::path::PathBuf;

use radii::cli::{self, PipelineConfig, RunOptions, Stage};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut args = std::env::args().skip(1);
    let config = args.next().map(PathBuf::from);
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("radii-out"));
    let base = match &config {
        Some(p) => PipelineConfig::load(p),
        None => Ok(PipelineConfig::default()),
    };
    let run = base.and_then(|cfg| {
        let resolved = cli::tune(&cfg)?;
        println!("resolved configuration:\n{}", resolved.to_toml());
        let opts = RunOptions {
            out: Some(out),
            ..RunOptions::default()
        };
        cli::run_with_config(Stage::All, resolved, &opts)
    });
    match run {
        Ok(o) => {
            let r = o.report.expect("`all` writes a report");
            for c in &r.certificates {
                println!("{:<11} {:<32} Y = {}  Z = {}", c.kind, c.label, c.y, c.z);
            }
            println!("report in {}", o.out_dir.display());
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(cli::exit_code(&e));
        }
    }
}
