//! Certify the connecting orbit from c1 to c0 and write it as CSV.
//!
//! Usage: `cargo run --release --example connection [trajectory.csv]`

use std::time::Instant;

use radii::cli::{self, PipelineConfig};
use radii::heteroclinic::{trajectory_csv, validate_connection};
use radii::interval::Interval;
use radii::model::Params;

fn main() -> radii::Result<()> {
    env_logger::init();
    let cfg = PipelineConfig::default();
    let p = Params::<Interval>::standard();
    let eq = cli::run_equilibria(&p)?;
    let eig = cli::run_eigen(&p, &eq)?;
    let m = cli::run_manifolds(&p, &cfg, &eq, &eig)?;

    let t = Instant::now();
    let c = validate_connection(&p, &m.unstable, &m.stable, &cfg.orbit_config())?;
    let b = &c.bounds;
    println!("{} -> {}: alpha0 = {}, tau = {}, K = {}", c.departure, c.arrival, c.alpha0, c.tau, c.k);
    println!("    alpha = {}, theta = {:?}", c.alpha, c.theta);
    println!("    Y = {}", b.y);
    println!("    Z0 = {} (finite part {}, tail {})", b.z0(), b.z0_finite, b.tail);
    println!("    Z1(R) = {}", b.z1(c.r_big));
    println!("    r = {:e}", c.r);
    println!("    ODE residual = {:e}", c.ode_residual);
    println!("    {:.2?}", t.elapsed());

    let path = std::env::args().nth(1).unwrap_or_else(|| "trajectory.csv".into());
    std::fs::write(&path, trajectory_csv(&c, 1000)).expect("writable CSV path");
    println!("trajectory written to {path}");
    Ok(())
}
