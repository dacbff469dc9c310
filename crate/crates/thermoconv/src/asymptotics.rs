//! First- and second-order expansions of the optimal conversion rate.
//!
//! Everything is expressed through `D = D(·‖γ)` and `V = V(·‖γ)` of the
//! initial and target states. Which formula applies depends on which of the
//! two variances vanish; see [`Regime`].

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::Scalar;
use crate::dist::{rel_entropy, rel_entropy_variance, Distribution};
use crate::error::{Error, Result};
use crate::normal::inverse_std_normal_cdf;
use crate::rayleigh::rayleigh_normal_inverse;

/// Float-mode variance threshold below which a state counts as flat.
pub const FLAT_VARIANCE_TOL: f64 = 1e-12;
/// Variances between the threshold and this bound are reported as borderline.
const BORDERLINE_VARIANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Both variances positive.
    General,
    /// Flat target, `V(q‖γ) = 0`.
    Distillation,
    /// Flat source, `V(p‖γ) = 0`.
    Formation,
    /// Both flat; the rate is known exactly.
    FlatToFlat,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::General => "general",
            Regime::Distillation => "distillation",
            Regime::Formation => "formation",
            Regime::FlatToFlat => "flatToFlat",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `R ≈ first_order + second_order_coefficient / sqrt(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateExpansion {
    pub first_order: f64,
    pub second_order_coefficient: f64,
    /// Irreversibility parameter; infinite for distillation, zero for formation,
    /// undefined (`NaN`) when both states are flat.
    pub nu: f64,
    pub regime: Regime,
}

impl RateExpansion {
    pub fn at(&self, n: u32) -> f64 {
        self.first_order + self.second_order_coefficient / (n as f64).sqrt()
    }
}

/// Relative entropy and its variance against `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub d: f64,
    pub v: f64,
}

impl Moments {
    pub fn of<S: Scalar>(p: &Distribution<S>, gamma: &Distribution<S>) -> Result<Self> {
        Ok(Self { d: rel_entropy(p, gamma)?, v: rel_entropy_variance(p, gamma)? })
    }
}

/// Whether `p_i / gamma_i` is constant on the support of `p`.
///
/// Exact scalars compare the ratios exactly; floats threshold the variance.
pub fn is_flat<S: Scalar>(p: &Distribution<S>, gamma: &Distribution<S>) -> Result<bool> {
    let v = rel_entropy_variance(p, gamma)?;
    if S::EXACT {
        let mut ratios = p
            .entries()
            .iter()
            .zip(gamma.entries())
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, g)| a.over(g));
        let first = ratios.next().expect("distributions carry mass");
        return Ok(ratios.all(|r| r.same(&first, 0.0)));
    }
    if v > FLAT_VARIANCE_TOL && v < BORDERLINE_VARIANCE {
        log::warn!("relative entropy variance {v:e} is close to zero; treating the state as non-flat");
    }
    Ok(v <= FLAT_VARIANCE_TOL)
}

pub fn classify<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>, gamma: &Distribution<S>) -> Result<Regime> {
    Ok(match (is_flat(p, gamma)?, is_flat(q, gamma)?) {
        (true, true) => Regime::FlatToFlat,
        (true, false) => Regime::Formation,
        (false, true) => Regime::Distillation,
        (false, false) => Regime::General,
    })
}

fn check_nonthermal(m: &Moments, which: &str) -> Result<()> {
    if !(m.d > 0.0) {
        return Err(Error::Regime(format!("{which} state equals the Gibbs state (D = 0)")));
    }
    if !m.d.is_finite() {
        return Err(Error::SupportViolation);
    }
    Ok(())
}

/// `ν = (V_p / D_p) / (V_q / D_q)`.
pub fn irreversibility_nu<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<f64> {
    let (mp, mq) = (Moments::of(p, gamma)?, Moments::of(q, gamma)?);
    check_nonthermal(&mp, "initial")?;
    check_nonthermal(&mq, "target")?;
    if mq.v <= 0.0 {
        return Err(Error::Regime("target has V = 0; use the distillation regime".into()));
    }
    Ok((mp.v / mp.d) / (mq.v / mq.d))
}

/// `(1/n) floor((n D_p - ln(1 - ε)) / D_q)` as an exact fraction.
///
/// The quotient is nudged by `1e-9` before flooring so that values that are
/// integers in exact arithmetic (such as `ε = 1/2` with `D_q = ln 2`) are not
/// lost to rounding.
pub fn flat_to_flat_exact_rate(n: u32, epsilon: f64, dp: f64, dq: f64) -> Result<BigRational> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon {epsilon} must lie in [0, 1)")));
    }
    if !(dq > 0.0) {
        return Err(Error::Domain("target divergence must be positive".into()));
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let x = (n as f64 * dp - (-epsilon).ln_1p()) / dq;
    let m = (x + 1e-9 * x.abs().max(1.0)).floor().max(0.0);
    Ok(BigRational::new(BigInt::from(m as u64), BigInt::from(n)))
}

/// The regime, first-order rate and `1/sqrt(n)` coefficient at error `ε`.
///
/// The general regime uses the `Z_{1/ν}` form with the variance of the
/// initial state; formation switches to the `Z_ν` form with the target
/// variance, where `Z_0 = Φ`, so `Z_∞` is never needed.
pub fn rate_expansion<S: Scalar>(
    epsilon: f64,
    p: &Distribution<S>,
    q: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<RateExpansion> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon {epsilon} must lie in (0, 1)")));
    }
    let (mp, mq) = (Moments::of(p, gamma)?, Moments::of(q, gamma)?);
    check_nonthermal(&mp, "initial")?;
    check_nonthermal(&mq, "target")?;
    let regime = classify(p, q, gamma)?;
    let first_order = mp.d / mq.d;
    let (coef, nu) = match regime {
        Regime::FlatToFlat => (0.0, f64::NAN),
        Regime::Distillation => (mp.v.sqrt() / mq.d * inverse_std_normal_cdf(epsilon)?, f64::INFINITY),
        Regime::Formation => {
            (first_order * (mq.v / (mp.d * mq.d)).sqrt() * inverse_std_normal_cdf(epsilon)?, 0.0)
        }
        Regime::General => {
            let nu = (mp.v / mp.d) / (mq.v / mq.d);
            (mp.v.sqrt() / mq.d * rayleigh_normal_inverse(epsilon, 1.0 / nu)?, nu)
        }
    };
    Ok(RateExpansion { first_order, second_order_coefficient: coef, nu, regime })
}

/// Both general-regime forms, `(Z_{1/ν} form, Z_ν form)`, at `n` copies.
pub fn general_rate_forms<S: Scalar>(
    n: u32,
    epsilon: f64,
    p: &Distribution<S>,
    q: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<(f64, f64)> {
    let (mp, mq) = (Moments::of(p, gamma)?, Moments::of(q, gamma)?);
    let nu = irreversibility_nu(p, q, gamma)?;
    if mp.v <= 0.0 {
        return Err(Error::Regime("initial state has V = 0; only the Z_ν form exists".into()));
    }
    let nf = n as f64;
    let r1 = mp.d / mq.d;
    let a = r1 * (1.0 + (mp.v / (nf * mp.d * mp.d)).sqrt() * rayleigh_normal_inverse(epsilon, 1.0 / nu)?);
    let b = r1 * (1.0 + (mq.v / (nf * mp.d * mq.d)).sqrt() * rayleigh_normal_inverse(epsilon, nu)?);
    Ok((a, b))
}

/// Second-order estimate of `R*(n, ε)`; exact for flat-to-flat.
pub fn second_order_rate<S: Scalar>(
    n: u32,
    epsilon: f64,
    p: &Distribution<S>,
    q: &Distribution<S>,
    gamma: &Distribution<S>,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let e = rate_expansion(epsilon, p, q, gamma)?;
    if e.regime == Regime::FlatToFlat {
        let (dp, dq) = (rel_entropy(p, gamma)?, rel_entropy(q, gamma)?);
        let r = flat_to_flat_exact_rate(n, epsilon, dp, dq)?;
        return Ok(crate::arith::ratio_to_f64(r.numer(), r.denom()));
    }
    Ok(e.at(n))
}
