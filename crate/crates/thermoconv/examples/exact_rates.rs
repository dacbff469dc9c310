// Exact optimal rates for many copies of a qubit.
//
// `p = [0.7, 0.3]` is converted into `q = [0.8, 0.2]` for a system with
// `E = [0, 1]` at `T = 3`, with infidelity at most 0.05. The exact number of
// outputs `m*` is compared with the second-order estimate and the first-order
// rate `D(p‖γ)/D(q‖γ)`.

use std::error::Error;

use thermoconv::asymptotics::second_order_rate;
use thermoconv::dist::{rel_entropy, Distribution, ThermalSystem};
use thermoconv::iid::{optimal_rate, RateOptions};
use thermoconv::majorize::EmbeddingSpec;

#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub n: u32,
    pub m: u32,
    pub second_order: f64,
    pub first_order: f64,
}

pub fn run_example() -> Result<Vec<Row>, Box<dyn Error>> {
    let system = ThermalSystem::from_temperature(vec![0.0, 1.0], 3.0, 1.0)?;
    let (spec, _) = EmbeddingSpec::from_gibbs(&system, 1_000_000)?;
    let gamma = spec.gibbs_state::<f64>();
    let p = Distribution::from_slice(&[0.7, 0.3])?;
    let q = Distribution::from_slice(&[0.8, 0.2])?;
    let eps = 0.05;
    let first_order = rel_entropy(&p, &gamma)? / rel_entropy(&q, &gamma)?;

    println!("{:>4} {:>4} {:>9} {:>9} {:>9}", "n", "m*", "R*", "R2", "R1");
    let mut rows = Vec::new();
    for n in (20..=200).step_by(20) {
        let exact = optimal_rate(&p, &q, &spec, n, eps, RateOptions::default())?;
        let second_order = second_order_rate(n, eps, &p, &q, &gamma)?;
        println!("{n:>4} {:>4} {:>9.5} {second_order:>9.5} {first_order:>9.5}", exact.m, exact.rate_f64());
        rows.push(Row { n, m: exact.m, second_order, first_order });
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
