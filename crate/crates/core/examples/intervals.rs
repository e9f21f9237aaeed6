//! Outward-rounded interval arithmetic on a few classic expressions.

use radii::interval::{ComplexInterval, Interval};

fn main() {
    let tenth = Interval::ratio(1, 10).unwrap();
    let sum = tenth + Interval::ratio(2, 10).unwrap();
    println!("1/10 + 2/10    = {sum}  (contains 0.3: {})", sum.contains(0.3));

    let b = Interval::ratio(9, 20).unwrap();
    let s = b.sqrt().unwrap();
    println!("sqrt(9/20)     = {s}  width {:e}", s.width());
    println!("sqrt(9/20)^2   = {}", s.sqr());

    let pi = Interval::pi();
    println!("sin(pi)        = {}", pi.sin());
    println!("exp(1) vs e    = {} / {}", Interval::ONE.exp(), Interval::e());
    println!("ln(e)          = {}", Interval::e().ln().unwrap());

    // a wide argument: the dependency problem in x − x
    let x = Interval::new(1.0, 2.0).unwrap();
    println!("x - x on [1,2] = {}", x - x);
    println!("x^3 on [-1,2]  = {}", Interval::new(-1.0, 2.0).unwrap().powi(3));

    let z = ComplexInterval::point(0.106, 0.791);
    println!("|0.106 + 0.791i| = {}", z.abs());
    println!("1 / z          = {}", z.recip().unwrap());
}
