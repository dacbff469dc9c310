//! The Rayleigh-normal family `Z_ν(μ)`.
//!
//! `Z_0` is the standard normal CDF and `Z_1(μ) = 1 - exp(-μ²/4)` on
//! `μ >= 0`. For `ν > 1` the optimal monotone rearrangement switches at the
//! point `α` where `Φ'/Φ'_{μ,ν} = Φ/Φ_{μ,ν}`; left of it the fidelity density
//! is proportional to `Φ'_{μ,ν}` and integrates to `sqrt(Φ(α) Φ_{μ,ν}(α))`,
//! right of it it is `sqrt(Φ' Φ'_{μ,ν})`, a scaled Gaussian whose tail is
//! again a normal CDF. So
//!
//! ```text
//! Z_ν(μ) = 1 - ( sqrt(Φ(α) Φ_{μ,ν}(α)) + ν^{-1/4} s e^{-μ²/(4(ν+1))} Φ((μ/(ν+1) - α)/s) )²
//! ```
//!
//! with `s² = 2ν/(ν+1)`. For `0 < ν < 1` the duality
//! `Z_ν(μ) = Z_{1/ν}(μ/sqrt ν)` reduces to the case above.

use crate::error::{Error, Result};
use crate::normal::{inverse_std_normal_cdf, ln_cdf_plus_half_square, ln_std_normal_cdf, std_normal_cdf};

/// `(μ, ν)` with `ν` finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighNormalParams {
    mu: f64,
    nu: f64,
}

impl RayleighNormalParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain(format!("mu = {mu} must be finite")));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Domain(format!("nu = {nu} must be finite and non-negative")));
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Residual of the switching-point equation, in logs.
///
/// With `y = (x - μ)/sqrt ν` it is `½ ln ν - L(x) + L(y)`, where
/// `L(t) = ln Φ(t) + t²/2`. When both arguments sit in the upper range the
/// quadratic parts are combined as `(y - x)(y + x)/2` so large `|α|` does
/// not cost digits.
fn crossing_residual(x: f64, mu: f64, nu: f64) -> f64 {
    let half_ln_nu = 0.5 * nu.ln();
    let inv_sd = (-half_ln_nu).exp();
    let y = (x - mu) * inv_sd;
    if x >= -5.0 && y >= -5.0 {
        // y - x without first rounding y, which matters once |x| is in the thousands.
        let y_minus_x = x * (-half_ln_nu).exp_m1() - mu * inv_sd;
        let y_plus_x = 2.0 * x + y_minus_x;
        half_ln_nu - ln_std_normal_cdf(x) + ln_std_normal_cdf(y) + 0.5 * y_minus_x * y_plus_x
    } else {
        half_ln_nu - ln_cdf_plus_half_square(x) + ln_cdf_plus_half_square(y)
    }
}

const MAX_BRACKET: f64 = 1e12;

/// The switching point `α_{μ,ν}` for `ν > 1`.
///
/// The residual is positive far left (it tends to `ln ν`) and negative far
/// right, so a bracket is grown geometrically around `-μ/(ν-1)`, where the
/// two log densities have equal slope, and then bisected.
pub fn alpha_root(mu: f64, nu: f64) -> Result<f64> {
    if !(nu > 1.0 && nu.is_finite()) || !mu.is_finite() {
        return Err(Error::Domain(format!("alpha needs finite mu and nu > 1, got ({mu}, {nu})")));
    }
    let g = |x: f64| crossing_residual(x, mu, nu);
    let centre = -mu / (nu - 1.0);
    if !centre.is_finite() || centre.abs() > MAX_BRACKET {
        return Err(Error::BracketNotFound(format!(
            "switching point for (mu, nu) = ({mu}, {nu}) is beyond {MAX_BRACKET:e}"
        )));
    }
    let mut width = 1.0f64.max(centre.abs() * 1e-3);
    let (mut lo, mut hi) = (centre - width, centre + width);
    while !(g(lo) > 0.0 && g(hi) < 0.0) {
        width *= 2.0;
        if width > MAX_BRACKET {
            return Err(Error::BracketNotFound(format!(
                "no sign change of the crossing residual within {MAX_BRACKET:e} of {centre}"
            )));
        }
        if g(lo) <= 0.0 {
            lo = centre - width;
        }
        if g(hi) >= 0.0 {
            hi = centre + width;
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // lo and hi are now adjacent doubles straddling the root. Far out the
    // residual's slope is large enough that neither end gets close to zero.
    let alpha = if g(lo).abs() < g(hi).abs() { lo } else { hi };
    let residual = g(alpha);
    if !residual.is_finite() {
        return Err(Error::BracketNotFound(format!("crossing residual is {residual} at {alpha}")));
    }
    Ok(alpha)
}

/// `∫_α^∞ sqrt(Φ'(x) Φ'_{μ,ν}(x)) dx`.
fn upper_overlap(mu: f64, nu: f64, alpha: f64) -> f64 {
    let s = (2.0 * nu / (nu + 1.0)).sqrt();
    let centre = mu / (nu + 1.0);
    nu.powf(-0.25) * s * (-mu * mu / (4.0 * (nu + 1.0))).exp() * std_normal_cdf((centre - alpha) / s)
}

fn z_above_one(mu: f64, nu: f64) -> Result<f64> {
    let centre = -mu / (nu - 1.0);
    let alpha = if centre.abs() > MAX_BRACKET {
        // Every normal CDF below has saturated at 0 or 1 out here.
        centre
    } else {
        alpha_root(mu, nu)?
    };
    let y = (alpha - mu) / nu.sqrt();
    let ln_lower = 0.5 * (ln_std_normal_cdf(alpha) + ln_std_normal_cdf(y));
    // 1 - F^2 = (1 - sqrt F)(1 + sqrt F); the first factor is formed from
    // expm1 so that tiny values of Z deep in the lower tail survive.
    let deficit = -ln_lower.exp_m1() - upper_overlap(mu, nu, alpha);
    Ok((deficit * (2.0 - deficit)).clamp(0.0, 1.0))
}

/// `ν` within this distance of one is evaluated as `ν = 1`; the switching
/// point runs off to `±μ/(ν-1)` there while `Z` itself is continuous.
const UNIT_NU_TOL: f64 = 1e-12;

/// `Z_ν(μ)`.
pub fn rayleigh_normal_cdf(params: RayleighNormalParams) -> Result<f64> {
    let RayleighNormalParams { mu, nu } = params;
    let nu = if (nu - 1.0).abs() <= UNIT_NU_TOL { 1.0 } else { nu };
    if nu == 0.0 {
        Ok(std_normal_cdf(mu))
    } else if nu == 1.0 {
        Ok(if mu <= 0.0 { 0.0 } else { -(-mu * mu / 4.0).exp_m1() })
    } else if nu > 1.0 {
        z_above_one(mu, nu)
    } else {
        z_above_one(mu / nu.sqrt(), 1.0 / nu)
    }
}

/// Shorthand for [`rayleigh_normal_cdf`].
pub fn rayleigh_normal(mu: f64, nu: f64) -> Result<f64> {
    rayleigh_normal_cdf(RayleighNormalParams::new(mu, nu)?)
}

/// `Z_ν^{-1}(ε)`, the `μ` with `Z_ν(μ) = ε` to within `1e-9`.
pub fn rayleigh_normal_inverse(epsilon: f64, nu: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("nu = {nu} must be finite and non-negative")));
    }
    if nu == 0.0 {
        return inverse_std_normal_cdf(epsilon);
    }
    if (nu - 1.0).abs() <= UNIT_NU_TOL {
        return Ok(2.0 * (-(-epsilon).ln_1p()).sqrt());
    }
    let z = |mu: f64| rayleigh_normal(mu, nu);
    let (mut lo, mut hi) = (-1.0, 1.0);
    while z(lo)? > epsilon {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::BracketNotFound(format!("Z_{nu} stays above {epsilon}")));
        }
    }
    while z(hi)? < epsilon {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::BracketNotFound(format!("Z_{nu} stays below {epsilon}")));
        }
    }
    while hi - lo > 1e-14 * (1.0f64).max(lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if z(mid)? < epsilon {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    let miss = (z(mu)? - epsilon).abs();
    if miss > 1e-9 {
        return Err(Error::BracketNotFound(format!("inverse missed by {miss:e} at mu = {mu}")));
    }
    Ok(mu)
}

/// `ε_0(ν) = Z_ν(0)`, the error below which conversions are irreversible.
pub fn threshold_infidelity(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!("threshold needs 0 < nu < inf, got {nu}")));
    }
    rayleigh_normal(0.0, nu)
}

/// Least-squares fit of `Z_{1+Δ}(0) ≈ a Δ² + b Δ³`, returning `(a, b)`.
///
/// The cubic term absorbs the leading correction so that `a` estimates the
/// curvature of `ε_0` at `ν = 1` even from moderately small `Δ`.
pub fn curvature_fit(deltas: &[f64]) -> Result<(f64, f64)> {
    if deltas.len() < 2 {
        return Err(Error::Domain("curvature fit needs at least two offsets".into()));
    }
    let (mut s44, mut s45, mut s55, mut sy4, mut sy5) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &d in deltas {
        let z = threshold_infidelity(1.0 + d)?;
        let (x2, x3) = (d * d, d * d * d);
        s44 += x2 * x2;
        s45 += x2 * x3;
        s55 += x3 * x3;
        sy4 += z * x2;
        sy5 += z * x3;
    }
    let det = s44 * s55 - s45 * s45;
    if det.abs() < 1e-300 {
        return Err(Error::Domain("degenerate offsets in curvature fit".into()));
    }
    Ok(((sy4 * s55 - sy5 * s45) / det, (s44 * sy5 - s45 * sy4) / det))
}
