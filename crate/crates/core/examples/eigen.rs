//! Rigorous eigenpairs of the Jacobian at c0 and c1.

use radii::interval::Interval;
use radii::model::Params;
use radii::pointproofs::{spectrum_summary, validate_equilibrium, validate_spectrum};
use radii::rpa::NewtonOptions;

fn main() -> radii::Result<()> {
    let p = Params::<Interval>::standard();
    let opts = NewtonOptions::default();
    for (label, guess) in [("c0", [0.0; 3]), ("c1", [1.0, 0.0, 1.0])] {
        let eq = validate_equilibrium(label, &p, guess, 10.0, opts)?;
        let spec = validate_spectrum(&p, &eq, 10.0, opts)?;
        println!("{label}: {}", spectrum_summary(&spec));
        for e in &spec {
            println!("    lambda in {}  ({:?}, r = {:e})", e.eigenvalue, e.stability, e.r);
            for v in &e.eigenvector {
                println!("        {v}");
            }
        }
    }
    Ok(())
}
