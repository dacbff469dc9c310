// Thermomajorisation decided through the embedding map.
//
// A two-level system with Gibbs state `[3/4, 1/4]` is embedded into four
// levels where the Gibbs state becomes uniform, and states are compared by
// their Lorenz curves there.

use std::error::Error;

use thermoconv::arith::Exact;
use thermoconv::dist::{Distribution, ThermalSystem};
use thermoconv::majorize::{embed, embed_dense, lorenz_points, thermo_majorizes, EmbeddingSpec};

#[derive(Debug)]
pub struct Outcome {
    /// Rational Gibbs state of `E = [0, 1]` at `T = 3` with denominator at most 1000.
    pub gibbs_numerators: Vec<u64>,
    pub gibbs_error: f64,
    pub ground_to_gibbs: bool,
    pub sharp_to_uniform: bool,
    pub uniform_to_sharp: bool,
    /// Lorenz corners of the embedded ground state.
    pub lorenz: Vec<(u64, f64)>,
}

pub fn run_example() -> Result<Outcome, Box<dyn Error>> {
    let system = ThermalSystem::from_temperature(vec![0.0, 1.0], 3.0, 1.0)?;
    let (approx, gibbs_error) = EmbeddingSpec::from_gibbs(&system, 1000)?;
    println!("Gibbs state at T = 3: {:?} / {} (error {gibbs_error:.2e})", approx.numerators(), approx.denominator());

    let spec = EmbeddingSpec::new(vec![3, 1])?;
    let gamma = spec.gibbs_state::<Exact>();
    let ground = Distribution::<Exact>::parse(&["1", "0"])?;
    let half = Distribution::<Exact>::parse(&["1/2", "1/2"])?;

    let show = |name: &str, p: &Distribution<Exact>| -> Result<(), Box<dyn Error>> {
        let dense: Vec<String> = embed_dense(p, &spec)?.iter().map(|x| x.to_string()).collect();
        println!("{name:>8} -> [{}]", dense.join(", "));
        Ok(())
    };
    show("ground", &ground)?;
    show("uniform", &half)?;
    show("gibbs", &gamma)?;

    let ground_to_gibbs = thermo_majorizes(&ground, &gamma, &spec)?;
    let sharp_to_uniform = thermo_majorizes(&ground, &half, &spec)?;
    let uniform_to_sharp = thermo_majorizes(&half, &ground, &spec)?;
    println!("ground -> gibbs:   {ground_to_gibbs}");
    println!("ground -> uniform: {sharp_to_uniform}");
    println!("uniform -> ground: {uniform_to_sharp}");

    let lorenz = lorenz_points(&embed(&ground.to_float(), &spec)?)
        .into_iter()
        .map(|(k, l)| (k.to_string().parse().expect("small index"), l))
        .collect::<Vec<(u64, f64)>>();
    println!("Lorenz corners of the embedded ground state: {lorenz:?}");

    Ok(Outcome {
        gibbs_numerators: approx.numerators().to_vec(),
        gibbs_error,
        ground_to_gibbs,
        sharp_to_uniform,
        uniform_to_sharp,
        lorenz,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
