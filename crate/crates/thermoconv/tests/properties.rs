mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermoconv::approx::{min_interconversion_infidelity, optimal_majorizing, smoothed_target};
use thermoconv::arith::Exact;
use thermoconv::asymptotics::general_rate_forms;
use thermoconv::compressed::CompressedDistribution;
use thermoconv::dist::{
    fidelity, rel_entropy, rel_entropy_variance, shannon_entropy, tv_distance, Distribution, ThermalSystem,
};
use thermoconv::iid::{optimal_infidelity, ConversionInstance};
use thermoconv::majorize::{
    embed, embed_dense, lorenz_curve, lorenz_points, majorizes, majorizes_dense, thermo_majorizes, EmbeddingSpec,
};
use thermoconv::rayleigh::{rayleigh_normal, rayleigh_normal_inverse};
use thermoconv::thermo::{
    carnot_work, carnot_work_integral, engine_performance, work_report, EngineSetup,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_system(r: &mut ChaCha8Rng, dim: usize) -> ThermalSystem {
    let energies = (0..dim).map(|_| r.gen_range(0.0..3.0)).collect();
    ThermalSystem::new(energies, r.gen_range(0.05..3.0)).unwrap()
}

fn embedded(p: &Distribution<f64>, spec: &EmbeddingSpec) -> Distribution<f64> {
    Distribution::new(embed_dense(p, spec).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tensor_powers_stay_normalised(seed in any::<u64>(), n in 1u32..12) {
        let mut r = rng(seed);
        let d = r.gen_range(2..5);
        let p = common::random_distribution(&mut r, d, true);
        let power = CompressedDistribution::from_dense(&p).tensor_power(n);
        prop_assert!((power.total_mass() - 1.0).abs() < 1e-12);
        prop_assert_eq!(power.total_dim().clone(), BigUint::from(d).pow(n));

        let exact = Distribution::<Exact>::parse(&["1/3", "1/6", "1/2"]).unwrap();
        let power = CompressedDistribution::from_dense(&exact).tensor_power(n);
        prop_assert_eq!(power.total_mass(), Exact::from_integer(1.into()));
    }

    #[test]
    fn free_energy_form_of_relative_entropy(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..5);
        let sys = random_system(&mut r, d);
        let p = common::random_distribution(&mut r, d, true);
        let lhs = rel_entropy(&p, &sys.gibbs_state()).unwrap();
        let rhs = sys.beta() * sys.mean_energy(&p).unwrap() - shannon_entropy(&p) + sys.ln_partition();
        prop_assert!((lhs - rhs).abs() < 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn variance_is_sum_of_covariance_entries(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..5);
        let sys = random_system(&mut r, d);
        let p = common::random_distribution(&mut r, d, true);
        let m = sys.covariance_matrix(&p).unwrap();
        let v = rel_entropy_variance(&p, &sys.gibbs_state()).unwrap();
        prop_assert!((v - (m[0][0] + 2.0 * m[0][1] + m[1][1])).abs() < 1e-10);
    }

    #[test]
    fn thermal_variance_is_a_heat_capacity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let energies: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..3.0)).collect();
        let kb = r.gen_range(0.5..2.0);
        let (t, t2) = (r.gen_range(0.3..5.0), r.gen_range(0.3..5.0));
        let sys = ThermalSystem::from_temperature(energies, t, kb).unwrap();
        let other = sys.at_temperature(t2).unwrap();
        let v = rel_entropy_variance(&other.gibbs_state(), &sys.gibbs_state()).unwrap();
        let expected = (1.0 - t2 / t).powi(2) * sys.heat_capacity(t2).unwrap() / kb;
        prop_assert!((v - expected).abs() < 1e-10, "{} vs {}", v, expected);
    }

    #[test]
    fn data_processing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..6);
        let p = common::random_distribution(&mut r, d, true);
        let q = common::random_distribution(&mut r, d, true);
        let b = common::random_bistochastic(&mut r, d, 3);
        let bp = Distribution::new(common::apply(&b, p.entries())).unwrap();
        let bq = Distribution::new(common::apply(&b, q.entries())).unwrap();
        prop_assert!(fidelity(&bp, &bq).unwrap() >= fidelity(&p, &q).unwrap() - 1e-12);
        prop_assert!(tv_distance(&bp, &bq).unwrap() <= tv_distance(&p, &q).unwrap() + 1e-12);
    }

    #[test]
    fn embedding_preserves_divergences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let spec = common::random_spec(&mut r, d, 6);
        let p = common::random_distribution(&mut r, d, true);
        let q = common::random_distribution(&mut r, d, false);
        let (ph, qh) = (embedded(&p, &spec), embedded(&q, &spec));
        prop_assert!((rel_entropy(&ph, &qh).unwrap() - rel_entropy(&p, &q).unwrap()).abs() < 1e-10);
        prop_assert!((rel_entropy_variance(&ph, &qh).unwrap() - rel_entropy_variance(&p, &q).unwrap()).abs() < 1e-10);
        prop_assert!((fidelity(&ph, &qh).unwrap() - fidelity(&p, &q).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn thermomajorisation_at_infinite_temperature(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..5);
        let p = common::random_distribution(&mut r, d, true);
        let b = common::random_bistochastic(&mut r, d, 2);
        let q = if r.gen_bool(0.5) {
            Distribution::new(common::apply(&b, p.entries())).unwrap()
        } else {
            common::random_distribution(&mut r, d, true)
        };
        let spec = EmbeddingSpec::uniform(d).unwrap();
        prop_assert_eq!(thermo_majorizes(&p, &q, &spec).unwrap(), majorizes_dense(&p, &q));
    }

    #[test]
    fn lorenz_curves(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let spec = common::random_spec(&mut r, d, 5);
        let p = embed(&common::random_distribution(&mut r, d, true), &spec).unwrap();
        let q = embed(&common::random_distribution(&mut r, d, true), &spec).unwrap();
        let corners = lorenz_points(&p);
        for w in corners.windows(3) {
            let slope = |a: &(BigUint, f64), b: &(BigUint, f64)| {
                (b.1 - a.1) / (&b.0 - &a.0).to_string().parse::<f64>().unwrap()
            };
            prop_assert!(slope(&w[0], &w[1]) >= slope(&w[1], &w[2]) - 1e-12);
            prop_assert!(w[1].1 <= w[2].1 + 1e-15);
        }
        let mut dominates = true;
        for (k, _) in lorenz_points(&p).into_iter().chain(lorenz_points(&q)) {
            dominates &= lorenz_curve(&p, &k).unwrap() >= lorenz_curve(&q, &k).unwrap() - 1e-12;
        }
        prop_assert_eq!(dominates, majorizes(&p, &q));
    }

    #[test]
    fn witness_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let spec = common::random_spec(&mut r, d, 5);
        let p = embed(&common::random_distribution(&mut r, d, true), &spec).unwrap();
        let q = embed(&common::random_distribution(&mut r, d, true), &spec).unwrap();
        let w = optimal_majorizing(&p, &q).unwrap();
        for pair in w.ratios.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
        let (a, b) = (w.tilde_p.to_dense().unwrap(), q.to_dense().unwrap());
        prop_assert!(common::majorizes(&a, &b, 1e-12));
        prop_assert!((w.tilde_p.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn smoothed_target_attains_the_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let spec = common::random_spec(&mut r, d, 4);
        let p = common::random_distribution(&mut r, d, true);
        let q = common::random_distribution(&mut r, d, true);
        let tilde_q = smoothed_target(&p, &q, &spec).unwrap();
        let eps = min_interconversion_infidelity(&p, &q, &spec).unwrap();
        let achieved = 1.0 - fidelity(&q, &tilde_q).unwrap();
        prop_assert!((achieved - eps).abs() < 1e-10, "{} vs {}", achieved, eps);
        let (ph, th) = (embed_dense(&p, &spec).unwrap(), embed_dense(&tilde_q, &spec).unwrap());
        prop_assert!(common::majorizes(&ph, &th, 1e-10));
    }

    #[test]
    fn no_degraded_target_beats_the_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..5);
        let p = common::random_distribution(&mut r, d, true);
        let q = common::random_distribution(&mut r, d, true);
        let spec = EmbeddingSpec::uniform(d).unwrap();
        let best = 1.0 - min_interconversion_infidelity(&p, &q, &spec).unwrap();
        for _ in 0..200 {
            let b = common::random_bistochastic(&mut r, d, 3);
            let candidate = common::apply(&b, p.entries());
            prop_assert!(common::fidelity(q.entries(), &candidate) <= best + 1e-12);
        }
    }

    #[test]
    fn compressed_engine_matches_dense_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = 2;
        let spec = common::random_spec(&mut r, d, 4);
        let p = common::random_distribution(&mut r, d, true);
        let q = common::random_distribution(&mut r, d, true);
        let (n, m) = (r.gen_range(1..4), r.gen_range(0..4));
        let padding = r.gen_bool(0.7);
        let mut inst = ConversionInstance::new(p.clone(), q.clone(), spec.clone(), n, m).unwrap();
        inst.gibbs_padding = padding;
        let (a, b) = common::total_states(&p, &q, &spec, n, m, padding);
        let fast = optimal_infidelity(&inst).unwrap();
        prop_assert!((fast - common::optimal_infidelity(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn infidelity_grows_with_output_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = common::random_spec(&mut r, 2, 6);
        let p = common::random_distribution(&mut r, 2, false);
        let q = common::random_distribution(&mut r, 2, false);
        let n = r.gen_range(1..8);
        let inst = ConversionInstance::new(p, q, spec, n, 0).unwrap();
        let mut last = 0.0;
        for m in 0..12 {
            let e = optimal_infidelity(&inst.with_outputs(m)).unwrap();
            prop_assert!(e >= last - 1e-12, "m = {}: {} < {}", m, e, last);
            last = e;
        }
    }

    #[test]
    fn exact_and_float_modes_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = common::random_spec(&mut r, 2, 6);
        let num: Vec<u32> = (0..4).map(|_| r.gen_range(0..10)).collect();
        let a = (num[0], num[1].max(1) + num[0]);
        let b = (num[2], num[3].max(1) + num[2]);
        let s = |x: (u32, u32)| [format!("{}/{}", x.0, x.1), format!("{}/{}", x.1 - x.0, x.1)];
        let (sp, sq) = (s(a), s(b));
        let pe = Distribution::<Exact>::parse(&[&sp[0], &sp[1]]).unwrap();
        let qe = Distribution::<Exact>::parse(&[&sq[0], &sq[1]]).unwrap();
        let n = r.gen_range(1..6);
        let m = r.gen_range(0..6);
        let exact = optimal_infidelity(&ConversionInstance::new(pe.clone(), qe.clone(), spec.clone(), n, m).unwrap()).unwrap();
        let float = optimal_infidelity(&ConversionInstance::new(pe.to_float(), qe.to_float(), spec, n, m).unwrap()).unwrap();
        prop_assert!((exact - float).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_duality_and_monotonicity(mu in -3.0f64..3.0, nu in 0.1f64..10.0, step in 0.01f64..1.0) {
        let lhs = rayleigh_normal(mu, 1.0 / nu).unwrap();
        let rhs = rayleigh_normal(nu.sqrt() * mu, nu).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8);
        let (below, above) = (rayleigh_normal(mu, nu).unwrap(), rayleigh_normal(mu + step, nu).unwrap());
        // Deep in the lower tail Z is below the smallest double and rounds to 0.
        prop_assert!(above >= below);
        if below > f64::MIN_POSITIVE {
            prop_assert!(above > below, "Z({}) = {:e} vs Z({}) = {:e}", mu, below, mu + step, above);
        }
    }

    #[test]
    fn rayleigh_inverse_round_trip(eps in 0.001f64..0.999, nu in 0.1f64..10.0) {
        let mu = rayleigh_normal_inverse(eps, nu).unwrap();
        prop_assert!((rayleigh_normal(mu, nu).unwrap() - eps).abs() < 1e-9);
    }

    #[test]
    fn both_second_order_forms_agree(seed in any::<u64>(), n in 1u32..1000, eps in 0.01f64..0.99) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, 3);
        let gamma = sys.gibbs_state();
        let p = common::random_distribution(&mut r, 3, false);
        let q = common::random_distribution(&mut r, 3, false);
        let (a, b) = general_rate_forms(n, eps, &p, &q, &gamma).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn work_report_symmetry(seed in any::<u64>(), n in 1u32..10_000, eps in 0.001f64..0.999) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, 3);
        let p = common::random_distribution(&mut r, 3, false);
        let w = work_report(n, eps, &p, &sys).unwrap();
        prop_assert_eq!(w.wd + w.wf, 2.0 * w.w);
        let kt = 1.0 / sys.beta();
        prop_assert!((w.w - kt * rel_entropy(&p, &sys.gibbs_state()).unwrap()).abs() < 1e-12 * kt.max(1.0));
    }

    #[test]
    fn engine_energy_balance_and_carnot_work(seed in any::<u64>(), n in 10u32..10_000) {
        let mut r = rng(seed);
        let d = r.gen_range(2..4);
        let energies: Vec<f64> = (0..d).map(|_| r.gen_range(0.0..2.0)).collect();
        let th = r.gen_range(2.0..5.0);
        let tc = r.gen_range(0.2..1.0);
        let tc2 = r.gen_range(1.0..1.9);
        let setup = EngineSetup::new(energies, 1.0, th, tc, tc2, n).unwrap();
        let closed = carnot_work(&setup).unwrap();
        let integral = carnot_work_integral(&setup).unwrap();
        prop_assert!((closed - integral).abs() < 1e-8, "{} vs {}", closed, integral);
        let rep = engine_performance(&setup, n, 0.1).unwrap();
        prop_assert!((rep.q_in - (rep.q_out + n as f64 * rep.w)).abs() <= 1e-10 * rep.q_in.abs().max(1.0));
    }
}
