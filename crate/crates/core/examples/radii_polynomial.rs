//! Prove that x² = 2 has a unique solution near a Newton approximation.

use radii::interval::Interval;
use radii::linop::Mat;
use radii::rpa::{interval_of_existence, newton, NewtonOptions};

fn main() -> radii::Result<()> {
    let out = newton(
        |x: &[f64]| Ok(vec![x[0] * x[0] - 2.0]),
        |x: &[f64]| Ok(Mat::from_fn(1, 1, |_, _| 2.0 * x[0])),
        vec![1.0],
        NewtonOptions::default(),
    )?;
    let xb = Interval::point(out.x[0]);
    println!("Newton: x̄ = {} after {} iterations", out.x[0], out.iterations);

    // A ≈ DF(x̄)^{-1}; Y = |A F(x̄)|, Z(r) = |1 − A DF(x̄)| + 2|A| r
    let a = Interval::point(1.0 / (2.0 * out.x[0]));
    let y = (a * (xb.sqr() - Interval::exact(2))).abs();
    let r_big = 1e-3;
    let z = (Interval::ONE - a * Interval::exact(2) * xb).abs() + Interval::exact(2) * a.abs() * Interval::point(r_big);
    let gate = interval_of_existence(y, z, r_big);
    println!("Y = {}  Z = {}  success: {}", gate.y, gate.z, gate.success);
    if let Some(r) = gate.radius() {
        let ball = xb.inflate(r);
        println!("√2 ∈ {ball}  (r = {r:e}, contains f64 √2: {})", ball.contains(2f64.sqrt()));
    }
    Ok(())
}
