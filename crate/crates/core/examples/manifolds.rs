//! Certify the stable manifold of the origin and the unstable manifold of c1.
//!
//! Usage: `cargo run --release --example manifolds [K]`

use std::time::Instant;

use radii::interval::Interval;
use radii::cli::PipelineConfig;
use radii::manifold::{validate_manifold, Side};
use radii::model::Params;
use radii::pointproofs::{conjugate_pair, select, validate_equilibrium, validate_spectrum, Stability};
use radii::rpa::NewtonOptions;

fn main() -> radii::Result<()> {
    env_logger::init();
    let mut pipeline = PipelineConfig::default();
    if let Some(k) = std::env::args().nth(1) {
        pipeline.manifold.k = k.parse().expect("K must be an integer");
    }
    let (cfg_s, cfg_u) = (pipeline.manifold_config(false), pipeline.manifold_config(true));
    let p = Params::<Interval>::standard();
    let opts = NewtonOptions::default();

    let c0 = validate_equilibrium("c0", &p, [0.0; 3], 10.0, opts)?;
    let stable = select(&validate_spectrum(&p, &c0, 10.0, opts)?, Stability::Stable);
    let t = Instant::now();
    let ws = validate_manifold(&p, &c0, &stable[0], &stable[1], Side::Stable, &cfg_s)?;
    report("stable manifold of c0", &ws, t);

    let c1 = validate_equilibrium("c1", &p, [1.0, 0.0, 1.0], 10.0, opts)?;
    let spec = validate_spectrum(&p, &c1, 10.0, opts)?;
    let e1 = spec
        .iter()
        .find(|e| e.stability == Stability::Unstable && e.lambda_bar.im > 0.0)
        .expect("complex unstable pair");
    let e2 = conjugate_pair(e1);
    let t = Instant::now();
    let wu = validate_manifold(&p, &c1, e1, &e2, Side::Unstable, &cfg_u)?;
    report("unstable manifold of c1", &wu, t);
    Ok(())
}

fn report(name: &str, c: &radii::manifold::ManifoldCertificate, t: Instant) {
    println!("{name} (K = {}, nu = {}, scale = {:.6}):", c.k, c.nu, c.scale);
    println!("    Y = {}", c.bounds.y);
    println!("    Z0 finite = {}", c.bounds.z0_finite);
    println!("    Z0 tail   = {}", c.bounds.tail_bound * c.bounds.df_norm);
    println!("    Z = {}", c.existence.z);
    println!("    r = {:e}", c.r);
    println!("    invariance residual = {:e}", c.invariance_residual);
    println!("    {:.2?}", t.elapsed());
}
