//! Weighted ℓ¹ sequence spaces: Chebyshev and two-variable Taylor coefficients.

use radii::interval::Interval;
use radii::seqspace::{ChebSeq, Taylor2Seq};

fn main() {
    let mu = Interval::point(1.1);
    // geometrically decaying Chebyshev coefficients
    let u = ChebSeq::from_coeffs((0..30).map(|k| Interval::point(0.5f64.powi(k))).collect());
    let w = ChebSeq::from_coeffs((0..30).map(|k| Interval::point((-0.3f64).powi(k))).collect());
    let uw = u.convolve(&w);
    println!("‖u‖ = {}  ‖w‖ = {}  ‖u*w‖ = {}", u.norm(mu), w.norm(mu), uw.norm(mu));
    println!("‖u‖‖w‖ = {}", u.norm(mu) * w.norm(mu));

    for s in [-1.0, -0.25, 0.5, 1.0] {
        let si = Interval::point(s);
        let lhs = uw.eval(si).unwrap();
        let rhs = u.eval(si).unwrap() * w.eval(si).unwrap();
        println!("s = {s:5}: (u*w)(s) = {lhs}  u(s) w(s) = {rhs}");
    }

    let v = u.apply_lc();
    println!("antiderivative at -1: {}", v.eval(Interval::point(-1.0)).unwrap());
    println!("derivative recovers u_3: {} vs {}", v.derivative().get(3), u.get(3));

    let nu = Interval::point(0.9);
    let p = Taylor2Seq::from_fn(6, 6, |i, j| Interval::point(1.0 / (1 + i + j) as f64));
    let pp = p.cauchy(&p);
    println!("Taylor: ‖p‖ = {}  ‖p²‖ = {}  orders {:?}", p.norm(nu), pp.norm(nu), pp.orders());
}
