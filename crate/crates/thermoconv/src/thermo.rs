//! Thermodynamic readings of the second-order rates.
//!
//! These are estimates valid up to `o(1/sqrt n)` corrections; exact finite-`n`
//! values come from [`crate::iid`]. Energies are in the units of the
//! supplied [`ThermalSystem`], temperatures in energy per `k_B`.

use serde::Serialize;

use crate::arith::Scalar;
use crate::asymptotics::{irreversibility_nu, Moments};
use crate::dist::{Distribution, ThermalSystem};
use crate::error::{Error, Result};
use crate::normal::inverse_std_normal_cdf;
use crate::quadrature::integrate;
use crate::rayleigh::{rayleigh_normal_inverse, threshold_infidelity};

/// Curvature of `ν -> Z_ν(0)` at `ν = 1`: `Z_{1+Δ}(0) ≈ α Δ²`.
/// [`crate::rayleigh::curvature_fit`] recomputes it.
pub const CURVATURE_ALPHA: f64 = 0.0545;

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon {epsilon} must lie in (0, 1)")))
    }
}

/// `R R'` for the round trip `p^n -> q^{Rn} -> p^{R'Rn}` with errors `ε₁`, `ε₂`.
pub fn reversibility_rate<S: Scalar>(
    n: u32,
    eps1: f64,
    eps2: f64,
    p: &Distribution<S>,
    q: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<f64> {
    check_epsilon(eps1)?;
    check_epsilon(eps2)?;
    let nu = irreversibility_nu(p, q, gamma)?;
    if nu == 0.0 {
        return Err(Error::Regime("initial state has V = 0, so Z_{1/ν} is undefined".into()));
    }
    let mp = Moments::of(p, gamma)?;
    let z = rayleigh_normal_inverse(eps1, 1.0 / nu)? + rayleigh_normal_inverse(eps2, 1.0 / nu)?;
    Ok(1.0 + (mp.v / (n as f64 * mp.d * mp.d)).sqrt() * z)
}

/// Upper bound on the infidelity after two steps with errors `ε₁`, `ε₂`.
pub fn combined_error_bound(eps1: f64, eps2: f64) -> Result<f64> {
    if !(eps1 >= 0.0 && eps2 >= 0.0 && eps1 + eps2 < 1.0) {
        return Err(Error::Domain(format!("need non-negative errors with sum below 1, got {eps1} + {eps2}")));
    }
    let s = (eps1 * (1.0 - eps2)).sqrt() + (eps2 * (1.0 - eps1)).sqrt();
    Ok(s * s)
}

/// Distillable work, work of formation and their midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WorkReport {
    /// `W = (W_D + W_F) / 2`, equal to `k_B T D(p‖γ)` up to rounding.
    #[serde(rename = "W")]
    pub w: f64,
    pub delta_w: f64,
    #[serde(rename = "WD")]
    pub wd: f64,
    #[serde(rename = "WF")]
    pub wf: f64,
}

impl WorkReport {
    /// Built from the two works so that `W_D + W_F = 2 W` holds exactly.
    fn from_pair(wd: f64, wf: f64) -> Self {
        Self { w: 0.5 * (wd + wf), delta_w: 0.5 * (wf - wd), wd, wf }
    }
}

/// Work report in units of `k_B T` against an explicit Gibbs state.
pub fn work_report_nats<S: Scalar>(
    n: u32,
    epsilon: f64,
    p: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<WorkReport> {
    check_epsilon(epsilon)?;
    let m = Moments::of(p, gamma)?;
    if !(m.d > 0.0) {
        return Err(Error::Regime("the state is already thermal".into()));
    }
    if !m.d.is_finite() {
        return Err(Error::SupportViolation);
    }
    let correction = (m.v / n as f64).sqrt() * inverse_std_normal_cdf(epsilon)?;
    Ok(WorkReport::from_pair(m.d + correction, m.d - correction))
}

/// Work report in energy units at the system's temperature.
pub fn work_report(n: u32, epsilon: f64, p: &Distribution<f64>, system: &ThermalSystem) -> Result<WorkReport> {
    let kt = 1.0 / system.beta();
    if !kt.is_finite() {
        return Err(Error::Domain("work in energy units needs a finite temperature".into()));
    }
    let r = work_report_nats(n, epsilon, p, &system.gibbs_state())?;
    Ok(WorkReport::from_pair(kt * r.wd, kt * r.wf))
}

pub fn distillable_work(n: u32, epsilon: f64, p: &Distribution<f64>, system: &ThermalSystem) -> Result<f64> {
    Ok(work_report(n, epsilon, p, system)?.wd)
}

pub fn work_of_formation(n: u32, epsilon: f64, p: &Distribution<f64>, system: &ThermalSystem) -> Result<f64> {
    Ok(work_report(n, epsilon, p, system)?.wf)
}

/// `W_F - W_D = 2 ΔW`.
pub fn work_gap(n: u32, epsilon: f64, p: &Distribution<f64>, system: &ThermalSystem) -> Result<f64> {
    let r = work_report(n, epsilon, p, system)?;
    Ok(r.wf - r.wd)
}

/// `ΔW = -f w Φ^{-1}(ε)` for a thermal state at `T'` against a bath at `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThermalWorkGap {
    pub delta_w: f64,
    /// Relative energy fluctuation of the `n`-copy body.
    pub f: f64,
    /// Carnot work for moving `<E>_{γ'}` of heat between `T` and `T'`.
    pub w: f64,
}

pub fn thermal_work_gap(system: &ThermalSystem, t: f64, t_prime: f64, n: u32, epsilon: f64) -> Result<ThermalWorkGap> {
    check_epsilon(epsilon)?;
    if !(t > 0.0 && t_prime > 0.0) {
        return Err(Error::Domain("temperatures must be positive".into()));
    }
    if t == t_prime {
        return Ok(ThermalWorkGap { delta_w: 0.0, f: 0.0, w: 0.0 });
    }
    let kb = system.kb();
    let c = system.heat_capacity(t_prime)?;
    let prime = system.at_temperature(t_prime)?;
    let mean = prime.mean_energy(&prime.gibbs_state())?;
    let root = (kb * c / n as f64).sqrt();
    let phi_inv = inverse_std_normal_cdf(epsilon)?;
    let f = root * t_prime / mean;
    let w = mean * (1.0 - t / t_prime).abs();
    Ok(ThermalWorkGap { delta_w: -(t - t_prime).abs() * root * phi_inv, f, w })
}

/// A finite working body of `n` copies heated from `T_c` to `T_c'` by an
/// engine drawing from a bath at `T_h`.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineSetup {
    hot: ThermalSystem,
    th: f64,
    tc: f64,
    tc_prime: f64,
    n: u32,
}

impl EngineSetup {
    pub fn new(energies: Vec<f64>, kb: f64, th: f64, tc: f64, tc_prime: f64, n: u32) -> Result<Self> {
        if !(th > 0.0 && tc > 0.0 && tc_prime > 0.0) {
            return Err(Error::Domain("temperatures must be positive".into()));
        }
        if !(th > tc && th > tc_prime) {
            return Err(Error::Domain(format!(
                "hot bath at {th} must be hotter than the working body ({tc} -> {tc_prime})"
            )));
        }
        if n == 0 {
            return Err(Error::Domain("working body needs at least one copy".into()));
        }
        let hot = ThermalSystem::from_temperature(energies, th, kb)?;
        Ok(Self { hot, th, tc, tc_prime, n })
    }

    pub fn hot_system(&self) -> &ThermalSystem {
        &self.hot
    }
    pub fn th(&self) -> f64 {
        self.th
    }
    pub fn tc(&self) -> f64 {
        self.tc
    }
    pub fn tc_prime(&self) -> f64 {
        self.tc_prime
    }
    pub fn n(&self) -> u32 {
        self.n
    }
}

/// `D(γ_x‖γ_h)` and `V(γ_x‖γ_h)` from the energy moments at `T_x`.
///
/// `ln(γ_x/γ_h) = (β_h - β_x) E + ln Z_h - ln Z_x`, so the variance is
/// `(β_x - β_h)² Var_x(E)` and no per-level logarithm is needed.
fn thermal_moments(hot: &ThermalSystem, tx: f64) -> Result<Moments> {
    let x = hot.at_temperature(tx)?;
    let (mean, var, _) = x.gibbs_energy_moments();
    let db = x.beta() - hot.beta();
    let d = -db * mean + hot.ln_partition() - x.ln_partition();
    Ok(Moments { d: d.max(0.0), v: db * db * var })
}

/// `k_B T_h (D(γ_c‖γ_h) - D(γ_c'‖γ_h))`, the work of a Carnot engine that
/// heats the body from `T_c` to `T_c'`.
pub fn carnot_work(setup: &EngineSetup) -> Result<f64> {
    let kb = setup.hot.kb();
    let c = thermal_moments(&setup.hot, setup.tc)?;
    let c2 = thermal_moments(&setup.hot, setup.tc_prime)?;
    Ok(kb * setup.th * (c.d - c2.d))
}

/// `∫_{T_c}^{T_c'} (T_h/T_x - 1) c_{T_x} dT_x`, the same work summed over
/// infinitesimal Carnot cycles.
pub fn carnot_work_integral(setup: &EngineSetup) -> Result<f64> {
    let hot = &setup.hot;
    let th = setup.th;
    let value = integrate(
        |t| (th / t - 1.0) * hot.heat_capacity(t).unwrap_or(f64::NAN),
        setup.tc,
        setup.tc_prime,
        1e-12,
    )?;
    Ok(value)
}

/// Second-order performance of the engine at error `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EngineReport {
    /// Work per copy.
    pub w: f64,
    pub q_out: f64,
    pub q_in: f64,
    pub eta: f64,
    pub eta_carnot_integrated: f64,
    pub eta_second_order: f64,
    /// `V(γ_c‖γ_h) / V(γ_c'‖γ_h)`.
    pub nu: f64,
    /// `Z_ν(0)`; below it the efficiency correction is negative.
    pub threshold_epsilon: f64,
    /// `ν = 1`: perfect work at the integrated Carnot efficiency is possible.
    pub reversible: bool,
}

pub fn engine_performance(setup: &EngineSetup, n: u32, epsilon: f64) -> Result<EngineReport> {
    check_epsilon(epsilon)?;
    let hot = &setup.hot;
    let kb = hot.kb();
    let th = setup.th;
    let (c, c2) = (thermal_moments(hot, setup.tc)?, thermal_moments(hot, setup.tc_prime)?);
    if !(c2.v > 0.0) {
        return Err(Error::Regime("V(γ_c'‖γ_h) = 0, so ν is undefined".into()));
    }
    let nu = c.v / c2.v;
    // sqrt(V_c) Z^{-1}_{1/ν}(ε) equals sqrt(V_c') Z^{-1}_ν(ε) by duality; the
    // second form stays finite when V_c = 0.
    let root_v_zinv = if c.v > 0.0 {
        c.v.sqrt() * rayleigh_normal_inverse(epsilon, 1.0 / nu)?
    } else {
        c2.v.sqrt() * rayleigh_normal_inverse(epsilon, nu)?
    };
    let nf = n as f64;
    let delta_d = c.d - c2.d;
    let mean_at = |t: f64| -> Result<f64> {
        let s = hot.at_temperature(t)?;
        Ok(s.gibbs_energy_moments().0)
    };
    let delta_e = mean_at(setup.tc_prime)? - mean_at(setup.tc)?;
    let w = kb * th * (delta_d + root_v_zinv / nf.sqrt());
    let q_out = nf * delta_e;
    let work = nf * w;
    let q_in = q_out + work;
    let eta = 1.0 / (1.0 + q_out / work);
    let carnot_den = kb * th * delta_d;
    let eta_c = 1.0 / (1.0 + delta_e / carnot_den);
    // The correction uses c_{T_c} through k_B (T_h - T_c) sqrt(c/(n k_B)) = k_B T_h sqrt(V_c/n).
    let cap = hot.heat_capacity(setup.tc)?;
    let scale = if c.v > 0.0 {
        kb * (th - setup.tc) * (cap / (nf * kb)).sqrt() * (root_v_zinv / c.v.sqrt())
    } else {
        kb * th * root_v_zinv / nf.sqrt()
    };
    let eta2 = eta_c + delta_e / (carnot_den + delta_e).powi(2) * scale;
    let reversible = (nu - 1.0).abs() <= 1e-9;
    Ok(EngineReport {
        w,
        q_out,
        q_in,
        eta,
        eta_carnot_integrated: eta_c,
        eta_second_order: eta2,
        nu,
        threshold_epsilon: if reversible { 0.0 } else { threshold_infidelity(nu)? },
        reversible,
    })
}

/// `d/dT_x ln V(γ_x‖γ_h)` at `T_x = t`.
///
/// With `V = (β - β_h)² Var_β(E)` and `dVar/dβ = -κ₃`, the derivative in
/// `β` is `2/(β - β_h) - κ₃/Var`, times `dβ/dT = -1/(k_B T²)`.
pub fn variance_log_derivative(hot: &ThermalSystem, t: f64) -> Result<f64> {
    let x = hot.at_temperature(t)?;
    let (_, var, k3) = x.gibbs_energy_moments();
    let db = x.beta() - hot.beta();
    if !(var > 0.0) || db == 0.0 {
        return Err(Error::Regime(format!("V(γ_x‖γ_h) vanishes at T_x = {t}")));
    }
    let d_beta = 2.0 / db - k3 / var;
    Ok(-d_beta / (hot.kb() * t * t))
}

/// Central finite-difference version of [`variance_log_derivative`].
pub fn variance_log_derivative_fd(hot: &ThermalSystem, t: f64) -> Result<f64> {
    let h = 1e-6 * t;
    let lv = |tx: f64| -> Result<f64> {
        let v = thermal_moments(hot, tx)?.v;
        if !(v > 0.0) {
            return Err(Error::Regime(format!("V(γ_x‖γ_h) vanishes at T_x = {tx}")));
        }
        Ok(v.ln())
    };
    Ok((lv(t + h)? - lv(t - h)?) / (2.0 * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EngineErrorRate {
    pub g_of_tc: f64,
    /// `α (∫ |g| dT)²` over the heating path.
    pub continuous_error_bound: f64,
}

pub fn engine_error_rate(system: &ThermalSystem, th: f64, tc: f64, tc_prime: f64) -> Result<EngineErrorRate> {
    let setup = EngineSetup::new(system.energies().to_vec(), system.kb(), th, tc, tc_prime, 1)?;
    let hot = &setup.hot;
    let g_of_tc = variance_log_derivative(hot, tc)?;
    if tc == tc_prime {
        return Ok(EngineErrorRate { g_of_tc, continuous_error_bound: 0.0 });
    }
    let (lo, hi) = if tc < tc_prime { (tc, tc_prime) } else { (tc_prime, tc) };
    let failure = std::cell::RefCell::new(None);
    let total = integrate(
        |t| match variance_log_derivative(hot, t) {
            Ok(g) => g.abs(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        1e-12,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(EngineErrorRate { g_of_tc, continuous_error_bound: CURVATURE_ALPHA * total * total })
}

/// A temperature `T_x' ≠ T_x` in `(0, T_h)` with `V(γ_x'‖γ_h) = V(γ_x‖γ_h)`.
///
/// The variance vanishes at both ends of the interval, so such a partner
/// exists; a log-spaced scan finds a sign change away from `T_x` that is
/// then bisected.
pub fn matching_variance_temperature(system: &ThermalSystem, th: f64, tx: f64) -> Result<f64> {
    if !(tx > 0.0 && tx < th) {
        return Err(Error::Domain(format!("T_x = {tx} must lie in (0, {th})")));
    }
    let hot = ThermalSystem::from_temperature(system.energies().to_vec(), th, system.kb())?;
    let target = thermal_moments(&hot, tx)?.v;
    let h = |t: f64| -> f64 { thermal_moments(&hot, t).map(|m| m.v - target).unwrap_or(f64::NAN) };
    let steps = 4000;
    let (a, b) = (th * 1e-4, th * (1.0 - 1e-9));
    let grid: Vec<f64> = (0..=steps).map(|i| a * (b / a).powf(i as f64 / steps as f64)).collect();
    let exclusion = 1e-3 * tx;
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if (lo - exclusion..=hi + exclusion).contains(&tx) {
            continue;
        }
        let (fl, fh) = (h(lo), h(hi));
        if !(fl.is_finite() && fh.is_finite()) || fl.signum() == fh.signum() {
            continue;
        }
        let (mut lo, mut hi, mut fl) = (lo, hi, fl);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = h(mid);
            if fm.signum() == fl.signum() {
                lo = mid;
                fl = fm;
            } else {
                hi = mid;
            }
        }
        return Ok(0.5 * (lo + hi));
    }
    Err(Error::BracketNotFound(format!("no partner temperature for T_x = {tx} below {th}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rayleigh::rayleigh_normal;

    fn two_level() -> Vec<f64> {
        vec![0.0, 1.0]
    }

    #[test]
    fn error_bound_examples() {
        assert!((combined_error_bound(0.0, 0.3).unwrap() - 0.3).abs() < 1e-15);
        let e = 0.07;
        assert!((combined_error_bound(e, e).unwrap() - 4.0 * e * (1.0 - e)).abs() < 1e-15);
        let v = combined_error_bound(0.1, 0.2).unwrap();
        // sqrt(0.08) + sqrt(0.18) = sqrt(2)/2.
        assert!((v - 0.5).abs() < 1e-15);
        assert!(combined_error_bound(0.6, 0.5).is_err());
    }

    #[test]
    fn ground_state_work() {
        let sys = ThermalSystem::from_temperature(two_level(), 3.0, 1.0).unwrap();
        let p = Distribution::from_slice(&[1.0, 0.0]).unwrap();
        let r = work_report(10, 0.05, &p, &sys).unwrap();
        let expected = 3.0 * sys.ln_partition();
        assert!((r.wd - expected).abs() < 1e-12 && (r.wf - expected).abs() < 1e-12);
        assert!((expected - 1.62092).abs() < 1e-5);
        assert_eq!(r.wd + r.wf, 2.0 * r.w);
    }

    #[test]
    fn work_gap_in_thermal_units() {
        let p = Distribution::from_slice(&[0.7, 0.3]).unwrap();
        let g = Distribution::from_slice(&[0.5, 0.5]).unwrap();
        let r = work_report_nats(100, 0.05, &p, &g).unwrap();
        let v = 0.21 * (7f64 / 3.0).ln().powi(2);
        let expected = 2.0 * (v / 100.0).sqrt() * 1.644_853_626_951_472_2;
        assert!((r.wf - r.wd - expected).abs() < 1e-12);
        assert!(r.delta_w > 0.0);
        let half = work_report_nats(100, 0.5, &p, &g).unwrap();
        assert!((half.wd - half.w).abs() < 1e-15 && (half.wf - half.w).abs() < 1e-15);
    }

    #[test]
    fn thermal_gap_identity() {
        let sys = ThermalSystem::from_temperature(two_level(), 3.0, 1.0).unwrap();
        let g = thermal_work_gap(&sys, 3.0, 1.0, 100, 0.05).unwrap();
        let phi = inverse_std_normal_cdf(0.05).unwrap();
        assert!((g.delta_w + g.f * g.w * phi).abs() < 1e-10);
        assert_eq!(thermal_work_gap(&sys, 3.0, 3.0, 100, 0.05).unwrap().delta_w, 0.0);
        let far = thermal_work_gap(&sys, 3.0, 1.0, 1_000_000, 0.05).unwrap();
        assert!(far.delta_w.abs() < g.delta_w.abs() / 50.0);
    }

    #[test]
    fn carnot_closed_form_matches_integral() {
        let s = EngineSetup::new(two_level(), 1.0, 3.0, 1.0, 2.0, 1).unwrap();
        assert!((carnot_work(&s).unwrap() - carnot_work_integral(&s).unwrap()).abs() < 1e-8);
        let same = EngineSetup::new(two_level(), 1.0, 3.0, 1.0, 1.0, 1).unwrap();
        assert_eq!(carnot_work(&same).unwrap(), 0.0);
    }

    #[test]
    fn engine_limits() {
        let (th, tc) = (3.0, 1.0);
        let s = EngineSetup::new(two_level(), 1.0, th, tc, tc + 1e-4, 100).unwrap();
        let r = engine_performance(&s, 100, 0.05).unwrap();
        assert!((r.eta_carnot_integrated - (1.0 - tc / th)).abs() < 1e-3);

        let s = EngineSetup::new(two_level(), 1.0, th, tc, 2.0, 100).unwrap();
        let r = engine_performance(&s, 100, 0.05).unwrap();
        assert!((r.q_in - (r.q_out + 100.0 * r.w)).abs() < 1e-10);
        let at_threshold = engine_performance(&s, 100, r.threshold_epsilon).unwrap();
        assert!((at_threshold.eta_second_order - at_threshold.eta_carnot_integrated).abs() < 1e-9);
        let below = engine_performance(&s, 100, r.threshold_epsilon / 2.0).unwrap();
        assert!(below.eta_second_order < below.eta_carnot_integrated);
    }

    #[test]
    fn continuous_bound_dominates_one_step_error() {
        let sys = ThermalSystem::new(two_level(), 1.0).unwrap();
        let (th, tc, tc2) = (3.0, 1.0, 2.0);
        let r = engine_error_rate(&sys, th, tc, tc2).unwrap();
        let hot = ThermalSystem::from_temperature(two_level(), th, 1.0).unwrap();
        let nu = thermal_moments(&hot, tc).unwrap().v / thermal_moments(&hot, tc2).unwrap().v;
        let log_bound = CURVATURE_ALPHA * nu.ln().powi(2);
        // g keeps one sign on this path, so the two agree up to quadrature error.
        assert!(r.continuous_error_bound >= log_bound * (1.0 - 1e-10));
        assert!(log_bound >= rayleigh_normal(0.0, nu).unwrap());
        let fd = variance_log_derivative_fd(&hot, tc).unwrap();
        assert!((fd - r.g_of_tc).abs() < 1e-6 * r.g_of_tc.abs().max(1.0));
        assert_eq!(engine_error_rate(&sys, th, tc, tc).unwrap().continuous_error_bound, 0.0);
    }

    #[test]
    fn partner_temperature() {
        let sys = ThermalSystem::new(two_level(), 1.0).unwrap();
        let th = 3.0;
        let hot = ThermalSystem::from_temperature(two_level(), th, 1.0).unwrap();
        for &tx in &[0.3, 1.0, 2.5] {
            let t2 = matching_variance_temperature(&sys, th, tx).unwrap();
            assert!((t2 - tx).abs() > 1e-3);
            let (a, b) = (thermal_moments(&hot, tx).unwrap().v, thermal_moments(&hot, t2).unwrap().v);
            assert!((a - b).abs() < 1e-12 * a.max(1e-300));
            let s = EngineSetup::new(two_level(), 1.0, th, tx, t2, 10).unwrap();
            let r = engine_performance(&s, 10, 0.05).unwrap();
            assert!(r.reversible);
            let bound = engine_error_rate(&sys, th, tx, t2).unwrap().continuous_error_bound;
            assert!(bound > 0.0);
        }
    }
}
