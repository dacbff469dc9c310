// Total-variation smoothing by truncating the sorted tail.
//
// The construction keeps the largest entries up to mass `1 - ε`, moves `ε`
// onto the top entry and the remainder onto the last kept one. The distance
// it achieves is reported, because a heavy atom can push it above `ε`.

use std::error::Error;

use thermoconv::approx::tv_pre_witness;
use thermoconv::dist::Distribution;

pub fn run_example() -> Result<Vec<(f64, f64)>, Box<dyn Error>> {
    let cases = [
        (vec![0.5, 0.3, 0.2], 0.1),
        (vec![0.4, 0.3, 0.2, 0.1], 0.1),
        (vec![0.25; 4], 0.3),
    ];
    let mut out = Vec::new();
    for (p, eps) in cases {
        let dist = Distribution::from_slice(&p)?;
        let (tilde, achieved) = tv_pre_witness(&dist, &dist, &eps)?;
        println!("p = {p:?}, ε = {eps}: p~ = {:?}, distance {achieved:.3}", tilde.to_f64());
        out.push((eps, achieved));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
