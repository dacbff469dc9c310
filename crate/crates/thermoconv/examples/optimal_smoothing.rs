// Approximate thermomajorisation: the cheapest way to reach a target.
//
// Turning the ground state of a qubit with Gibbs state `[3/4, 1/4]` into the
// maximally mixed state is impossible exactly. Smoothing the initial state in
// the embedded picture costs `(3 - 2√2)/6`, while smoothing it before
// embedding costs `1/2`.

use std::error::Error;

use thermoconv::approx::{min_interconversion_infidelity, optimal_majorizing, qubit_pre_thermo_infidelity, smoothed_target};
use thermoconv::arith::Exact;
use thermoconv::dist::{fidelity, Distribution};
use thermoconv::majorize::{embed, EmbeddingSpec};

#[derive(Debug)]
pub struct Outcome {
    /// The optimal majorising vector, sorted, as exact strings.
    pub witness: Vec<String>,
    pub pivots: Vec<u64>,
    pub infidelity: f64,
    /// Infidelity between the target and the state actually reached.
    pub target_infidelity: f64,
    /// Least infidelity when the unembedded initial state is smoothed.
    pub pre_embedding: f64,
}

pub fn run_example() -> Result<Outcome, Box<dyn Error>> {
    let spec = EmbeddingSpec::new(vec![3, 1])?;
    let p = Distribution::<Exact>::parse(&["1", "0"])?;
    let q = Distribution::<Exact>::parse(&["1/2", "1/2"])?;

    let w = optimal_majorizing(&embed(&p, &spec)?, &embed(&q, &spec)?)?;
    let witness: Vec<String> = w.tilde_p.to_dense()?.iter().map(|x| x.to_string()).collect();
    let pivots = w.pivots.iter().map(|k| k.to_string().parse().expect("small pivot")).collect();
    println!("optimal p~ = [{}]", witness.join(", "));
    println!("pivots     = {pivots:?}, ratios = {:?}", w.ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>());

    let infidelity = min_interconversion_infidelity(&p, &q, &spec)?;
    println!("embedded infidelity  = {infidelity:.15} ((3 - 2√2)/6 = {:.15})", (3.0 - 2.0 * 2f64.sqrt()) / 6.0);

    let reached = smoothed_target(&p, &q, &spec)?;
    let target_infidelity = 1.0 - fidelity(&q, &reached)?;
    println!("reachable target q~  = {:?} at infidelity {target_infidelity:.15}", reached.to_f64());

    let pre_embedding = qubit_pre_thermo_infidelity(&p.to_float(), &q.to_float(), &spec)?;
    println!("smoothing before embedding costs {pre_embedding}");

    Ok(Outcome { witness, pivots, infidelity, target_infidelity, pre_embedding })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
