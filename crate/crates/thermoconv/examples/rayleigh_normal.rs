// The Rayleigh-normal family `Z_ν`.
//
// `Z_0` is the standard normal CDF, `Z_1(μ) = 1 - e^{-μ²/4}` for `μ > 0`,
// and `Z_ν(0)` is the error threshold below which a conversion with
// irreversibility `ν` loses rate at second order.

use std::error::Error;

use thermoconv::normal::std_normal_cdf;
use thermoconv::rayleigh::{curvature_fit, rayleigh_normal, rayleigh_normal_inverse, threshold_infidelity};

#[derive(Debug)]
pub struct Outcome {
    pub z1_at_2: f64,
    pub thresholds: Vec<(f64, f64)>,
    pub curvature: f64,
}

pub fn run_example() -> Result<Outcome, Box<dyn Error>> {
    let mus = [-2.0, -1.0, 0.0, 1.0, 2.0];
    print!("{:>6}", "ν/μ");
    mus.iter().for_each(|m| print!("{m:>10}"));
    println!();
    for nu in [0.0, 0.5, 1.0, 2.0, 5.0] {
        print!("{nu:>6}");
        for &mu in &mus {
            print!("{:>10.6}", rayleigh_normal(mu, nu)?);
        }
        println!();
    }
    println!("Φ(1) = {:.6}", std_normal_cdf(1.0));

    let z1_at_2 = rayleigh_normal(2.0, 1.0)?;
    let thresholds = [0.5, 0.9, 1.1, 2.0, 10.0]
        .iter()
        .map(|&nu| Ok((nu, threshold_infidelity(nu)?)))
        .collect::<Result<Vec<_>, Box<dyn Error>>>()?;
    for (nu, t) in &thresholds {
        println!("ε0({nu}) = {t:.6}, Z^-1 at 0.05 = {:.6}", rayleigh_normal_inverse(0.05, *nu)?);
    }
    let (curvature, cubic) = curvature_fit(&[0.01, 0.02, 0.05])?;
    println!("Z_(1+Δ)(0) ≈ {curvature:.4} Δ² + {cubic:.4} Δ³");

    Ok(Outcome { z1_at_2, thresholds, curvature })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
