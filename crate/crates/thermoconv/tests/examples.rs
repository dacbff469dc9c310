mod embedding {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/embedding.rs"));
}
mod optimal_smoothing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/optimal_smoothing.rs"));
}
mod tv_smoothing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tv_smoothing.rs"));
}
mod exact_rates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_rates.rs"));
}
mod rayleigh_normal {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rayleigh_normal.rs"));
}
mod second_order_rates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/second_order_rates.rs"));
}
mod work_gap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/work_gap.rs"));
}
mod heat_engine {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/heat_engine.rs"));
}

use thermoconv::asymptotics::Regime;

#[test]
fn embedding_example() {
    let out = embedding::run_example().unwrap();
    assert_eq!(out.gibbs_numerators, vec![127, 91]);
    assert!(out.gibbs_error < 2e-6);
    assert!(out.ground_to_gibbs);
    assert!(!out.sharp_to_uniform && !out.uniform_to_sharp);
    assert_eq!(out.lorenz, vec![(0, 0.0), (3, 1.0), (4, 1.0)]);
}

#[test]
fn optimal_smoothing_example() {
    let out = optimal_smoothing::run_example().unwrap();
    assert_eq!(out.witness, ["1/2", "1/4", "1/4", "0"]);
    assert_eq!(out.pivots, [5, 2, 1]);
    let eps0 = (3.0 - 2.0 * 2f64.sqrt()) / 6.0;
    assert!((out.infidelity - eps0).abs() < 1e-15);
    assert!((out.target_infidelity - eps0).abs() < 1e-12);
    assert!((out.pre_embedding - 0.5).abs() < 1e-12);
}

#[test]
fn tv_smoothing_example() {
    let out = tv_smoothing::run_example().unwrap();
    assert!((out[0].1 - 0.2).abs() < 1e-12, "a heavy atom overshoots ε");
    assert!((out[1].1 - out[1].0).abs() < 1e-12);
    assert!(out.iter().all(|&(eps, d)| d >= eps - 1e-12));
}

#[test]
fn exact_rates_example() {
    let rows = exact_rates::run_example().unwrap();
    let ms: Vec<u32> = rows.iter().map(|r| r.m).collect();
    assert_eq!(ms, [10, 17, 24, 31, 37, 44, 50, 56, 62, 69]);
    for r in &rows {
        assert!((r.m as f64 - (r.n as f64 * r.second_order).round()).abs() <= 1.0);
        assert!(r.m as f64 / r.n as f64 > r.first_order);
    }
}

#[test]
fn rayleigh_normal_example() {
    let out = rayleigh_normal::run_example().unwrap();
    assert!((out.z1_at_2 - (1.0 - (-1f64).exp())).abs() < 1e-12);
    // ε0(ν) = ε0(1/ν) by duality at μ = 0.
    assert!((out.thresholds[0].1 - out.thresholds[3].1).abs() < 1e-10);
    assert!((out.curvature - 0.0545).abs() < 0.002);
}

#[test]
fn second_order_rates_example() {
    let out = second_order_rates::run_example().unwrap();
    let regimes: Vec<Regime> = out.iter().map(|r| r.0).collect();
    assert_eq!(regimes, [Regime::General, Regime::Distillation, Regime::Formation]);
    assert!(out[0].2 > 0.0 && out[1].2 < 0.0 && out[2].2 < 0.0);
}

#[test]
fn work_gap_example() {
    let out = work_gap::run_example().unwrap();
    for pair in out.windows(2) {
        let (a, b) = (&pair[0].1, &pair[1].1);
        // Ten times the copies shrinks the gap by √10.
        assert!((a.delta_w / b.delta_w - 10f64.sqrt()).abs() < 1e-9);
        assert_eq!(b.wd + b.wf, 2.0 * b.w);
    }
}

#[test]
fn heat_engine_example() {
    let (report, balanced) = heat_engine::run_example().unwrap();
    assert!(!report.reversible && report.nu > 1.0);
    assert!(report.eta < report.eta_carnot_integrated);
    assert!(balanced.reversible);
    assert!((balanced.nu - 1.0).abs() < 1e-9);
}
