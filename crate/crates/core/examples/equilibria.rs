//! Certify the three equilibria and print the contraction bounds.

use radii::interval::Interval;
use radii::model::Params;
use radii::pointproofs::validate_equilibrium;
use radii::rpa::NewtonOptions;

fn main() -> radii::Result<()> {
    let p = Params::<Interval>::standard();
    let s = 0.45f64.sqrt();
    for (label, guess) in [("c0", [0.0, 0.0, 0.0]), ("c1", [s, 0.0, 1.0]), ("c2", [-s, 0.0, 1.0])] {
        let c = validate_equilibrium(label, &p, guess, 10.0, NewtonOptions::default())?;
        println!("{label}: c = {:?}", c.c_bar);
        println!("    Y = {}  Z = {}  R = {:e}", c.existence.y, c.existence.z, c.r_big);
        println!("    r = {:e}", c.r);
    }
    Ok(())
}
