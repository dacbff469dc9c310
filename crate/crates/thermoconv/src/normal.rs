//! Gaussian distribution functions with stable tails.

use libm::erfc;
use statrs::function::erf::erfc_inv;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x - LN_SQRT_2PI).exp()
}

/// `Φ(x)`, accurate in relative terms in the lower tail.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Cumulative distribution of a Gaussian with mean `mu` and variance `nu`.
pub fn normal_cdf(x: f64, mu: f64, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("variance {nu} must be positive")));
    }
    Ok(std_normal_cdf((x - mu) / nu.sqrt()))
}

/// Mills ratio `(1 - Φ(t)) / φ(t)` for `t >= 5` by backward continued fraction.
fn mills_ratio(t: f64) -> f64 {
    let mut f = t;
    for k in (1..=120).rev() {
        f = t + k as f64 / f;
    }
    1.0 / f
}

/// `ln Φ(x) + x^2 / 2`, free of cancellation for very negative `x`.
///
/// Root finding for the Rayleigh-normal split point evaluates differences of
/// these at arguments near `-1000`, where `ln Φ` itself is around `-5e5`.
pub fn ln_cdf_plus_half_square(x: f64) -> f64 {
    if x < -5.0 {
        -LN_SQRT_2PI + mills_ratio(-x).ln()
    } else if x > 5.0 {
        (-std_normal_cdf(-x)).ln_1p() + 0.5 * x * x
    } else {
        std_normal_cdf(x).ln() + 0.5 * x * x
    }
}

/// `ln Φ(x)`.
pub fn ln_std_normal_cdf(x: f64) -> f64 {
    if x < -5.0 {
        ln_cdf_plus_half_square(x) - 0.5 * x * x
    } else if x > 5.0 {
        (-std_normal_cdf(-x)).ln_1p()
    } else {
        std_normal_cdf(x).ln()
    }
}

/// `Φ^{-1}(p)` for `p` in `(0, 1)`, polished with two Newton steps.
pub fn inverse_std_normal_cdf(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("probability {p} must lie in (0, 1)")));
    }
    let mut x = -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p);
    for _ in 0..2 {
        let (err, dens) = if x < 0.0 {
            (std_normal_cdf(x) - p, std_normal_pdf(x))
        } else {
            ((1.0 - p) - std_normal_cdf(-x), std_normal_pdf(x))
        };
        if dens > 0.0 {
            x -= err / dens;
        }
    }
    Ok(x)
}
