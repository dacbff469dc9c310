// A heat engine with a finite working body.
//
// A hot bath at `T_h = 3` heats `n` copies of a qubit from `T_c = 1` to
// `T_c' = 2`. At second order the efficiency deviates from the integrated
// Carnot value unless the initial and final states have matching variance
// (`ν = 1`), as for heating from `T = 0.2` to its equal-variance partner.

use std::error::Error;

use thermoconv::thermo::{
    carnot_work, carnot_work_integral, engine_error_rate, engine_performance, matching_variance_temperature,
    EngineReport, EngineSetup,
};

pub fn run_example() -> Result<(EngineReport, EngineReport), Box<dyn Error>> {
    let energies = vec![0.0, 1.0];
    let (th, tc, tc2, n) = (3.0, 1.0, 2.0, 1000);
    let setup = EngineSetup::new(energies.clone(), 1.0, th, tc, tc2, n)?;
    println!("Carnot work: closed form {:.10}, integral {:.10}", carnot_work(&setup)?, carnot_work_integral(&setup)?);

    let report = engine_performance(&setup, n, 0.01)?;
    println!("ε = 0.01: {}", serde_json::to_string_pretty(&report)?);
    let rate = engine_error_rate(setup.hot_system(), th, tc, tc2)?;
    println!("g(T_c) = {:.6}, continuous error bound {:.6}", rate.g_of_tc, rate.continuous_error_bound);

    // Starting colder, there is a final temperature with the same variance.
    let cold = 0.2;
    let partner = matching_variance_temperature(setup.hot_system(), th, cold)?;
    let reversible = EngineSetup::new(energies, 1.0, th, cold, partner, n)?;
    let balanced = engine_performance(&reversible, n, 0.01)?;
    println!(
        "heating from {cold} to {partner:.6} gives ν = {:.12}, η = {:.6}, integrated Carnot {:.6}",
        balanced.nu, balanced.eta, balanced.eta_carnot_integrated
    );
    Ok((report, balanced))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
