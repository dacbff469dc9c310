//! Dense distributions, thermal systems and the information measures built on them.
//!
//! All logarithms are natural. Measures are evaluated in `f64` regardless of
//! the backend of the distribution; exactness only matters for majorisation.

use std::cmp::Ordering;

use crate::arith::{Exact, Scalar};
use crate::error::{Error, Result};

/// A finite probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<S: Scalar = f64> {
    entries: Vec<S>,
}

impl<S: Scalar> Distribution<S> {
    /// Validates non-negativity and normalisation (exact for rationals, `1e-12` for floats).
    pub fn new(entries: Vec<S>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        if entries.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidDistribution("negative entry".into()));
        }
        let total = entries.iter().fold(S::zero(), |acc, x| acc.plus(x));
        if !total.same(&S::one(), S::NORM_TOL) {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {} instead of 1",
                total.to_f64()
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }

    /// Converts to the float backend.
    pub fn to_float(&self) -> Distribution<f64> {
        Distribution { entries: self.to_f64() }
    }

    /// Entries sorted in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<S> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Point mass on `index`.
    pub fn sharp(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index + 1 });
        }
        let mut entries = vec![S::zero(); dim];
        entries[index] = S::one();
        Ok(Self { entries })
    }

    /// The uniform distribution on `dim` outcomes.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        let d = num_bigint::BigUint::from(dim);
        let one = num_bigint::BigUint::from(1u32);
        Ok(Self { entries: vec![S::from_ratio(&one, &d); dim] })
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].total_cmp(&w[1]) != Ordering::Less)
    }
}

impl Distribution<Exact> {
    /// Builds an exact distribution from strings like `"1/3"` or `"0.25"`.
    pub fn parse(entries: &[&str]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|s| crate::arith::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }
}

impl Distribution<f64> {
    /// Convenience constructor for float vectors.
    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

/// Shannon entropy `H(p)` in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy<S: Scalar>(p: &Distribution<S>) -> f64 {
    p.entries()
        .iter()
        .map(Scalar::to_f64)
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum()
}

/// Relative entropy `D(p||q)`; `+inf` when `p` is not supported inside `q`.
pub fn rel_entropy<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let mut acc = 0.0;
    for (a, b) in p.entries().iter().zip(q.entries()) {
        if a.is_zero() {
            continue;
        }
        if b.is_zero() {
            return Ok(f64::INFINITY);
        }
        acc += a.to_f64() * (a.ln() - b.ln());
    }
    Ok(acc)
}

/// Relative entropy variance `V(p||q) = Var_p(ln p/q)`.
pub fn rel_entropy_variance<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let mut terms = Vec::with_capacity(p.dim());
    for (a, b) in p.entries().iter().zip(q.entries()) {
        if a.is_zero() {
            continue;
        }
        if b.is_zero() {
            return Err(Error::SupportViolation);
        }
        terms.push((a.to_f64(), a.ln() - b.ln()));
    }
    let mean: f64 = terms.iter().map(|(w, l)| w * l).sum();
    Ok(terms.iter().map(|(w, l)| w * (l - mean).powi(2)).sum())
}

/// Fidelity (squared Bhattacharyya coefficient) `(sum sqrt(p_i q_i))^2`.
pub fn fidelity<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let b: f64 = p
        .entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| (a.to_f64() * b.to_f64()).sqrt())
        .sum();
    Ok((b * b).min(1.0))
}

/// `1 - fidelity(p, q)`.
pub fn infidelity<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> Result<f64> {
    Ok(1.0 - fidelity(p, q)?)
}

/// Total variation distance `½ Σ |p_i - q_i|`.
pub fn tv_distance<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    let total = p
        .entries()
        .iter()
        .zip(q.entries())
        .fold(S::zero(), |acc, (a, b)| {
            let d = a.minus(b);
            if d.is_negative() {
                acc.minus(&d)
            } else {
                acc.plus(&d)
            }
        });
    Ok(total.to_f64() / 2.0)
}

/// Energy levels at inverse temperature `beta`, with Boltzmann constant `kb`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalSystem {
    energies: Vec<f64>,
    beta: f64,
    kb: f64,
}

impl ThermalSystem {
    /// A system with `k_B = 1`.
    pub fn new(energies: Vec<f64>, beta: f64) -> Result<Self> {
        Self::with_kb(energies, beta, 1.0)
    }

    pub fn with_kb(energies: Vec<f64>, beta: f64, kb: f64) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::Domain("a system needs at least one level".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("energies must be finite".into()));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!("beta = {beta} must be finite and non-negative")));
        }
        if !(kb > 0.0 && kb.is_finite()) {
            return Err(Error::Domain(format!("k_B = {kb} must be positive")));
        }
        Ok(Self { energies, beta, kb })
    }

    /// The same system at temperature `t`, i.e. `beta = 1 / (k_B t)`.
    pub fn from_temperature(energies: Vec<f64>, t: f64, kb: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("temperature {t} must be positive")));
        }
        Self::with_kb(energies, 1.0 / (kb * t), kb)
    }

    pub fn at_temperature(&self, t: f64) -> Result<Self> {
        Self::from_temperature(self.energies.clone(), t, self.kb)
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn kb(&self) -> f64 {
        self.kb
    }
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `1 / (k_B beta)`, infinite at `beta = 0`.
    pub fn temperature(&self) -> f64 {
        1.0 / (self.kb * self.beta)
    }

    fn shifted_weights(&self) -> (f64, Vec<f64>) {
        let e_min = self.energies.iter().cloned().fold(f64::INFINITY, f64::min);
        let w = self
            .energies
            .iter()
            .map(|e| (-self.beta * (e - e_min)).exp())
            .collect();
        (e_min, w)
    }

    /// `ln Z`, computed with a shift so large `beta E` does not overflow.
    pub fn ln_partition(&self) -> f64 {
        let (e_min, w) = self.shifted_weights();
        -self.beta * e_min + w.iter().sum::<f64>().ln()
    }

    /// Gibbs weights `e^{-beta E_i} / Z` in float precision.
    pub fn gibbs_weights(&self) -> Vec<f64> {
        let (_, w) = self.shifted_weights();
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect()
    }

    /// The Gibbs state as a float distribution.
    pub fn gibbs_state(&self) -> Distribution<f64> {
        Distribution { entries: self.gibbs_weights() }
    }

    /// `<E>_p`.
    pub fn mean_energy<S: Scalar>(&self, p: &Distribution<S>) -> Result<f64> {
        check_dims(self.dim(), p.dim())?;
        Ok(p.entries().iter().zip(&self.energies).map(|(a, e)| a.to_f64() * e).sum())
    }

    /// Energy variance and third central moment in the Gibbs state.
    pub fn gibbs_energy_moments(&self) -> (f64, f64, f64) {
        let g = self.gibbs_weights();
        let mean: f64 = g.iter().zip(&self.energies).map(|(w, e)| w * e).sum();
        let var = g.iter().zip(&self.energies).map(|(w, e)| w * (e - mean).powi(2)).sum();
        let k3 = g.iter().zip(&self.energies).map(|(w, e)| w * (e - mean).powi(3)).sum();
        (mean, var, k3)
    }

    /// Heat capacity `c_T = Var_{gamma_T}(E) / (k_B T^2)`.
    pub fn heat_capacity(&self, t: f64) -> Result<f64> {
        let at = self.at_temperature(t)?;
        let (_, var, _) = at.gibbs_energy_moments();
        Ok(var / (self.kb * t * t))
    }

    /// The 2x2 covariance matrix of `(beta E, ln p)` under `p`.
    ///
    /// Outcomes with `p_i = 0` carry no weight and are skipped.
    pub fn covariance_matrix<S: Scalar>(&self, p: &Distribution<S>) -> Result<[[f64; 2]; 2]> {
        check_dims(self.dim(), p.dim())?;
        let rows: Vec<(f64, f64, f64)> = p
            .entries()
            .iter()
            .zip(&self.energies)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, e)| (a.to_f64(), self.beta * e, a.ln()))
            .collect();
        let mx: f64 = rows.iter().map(|(w, x, _)| w * x).sum();
        let my: f64 = rows.iter().map(|(w, _, y)| w * y).sum();
        let cov = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
            rows.iter().map(|&(w, x, y)| w * f(x - mx, y - my)).sum()
        };
        let xx = cov(&|x, _| x * x);
        let xy = cov(&|x, y| x * y);
        let yy = cov(&|_, y| y * y);
        Ok([[xx, xy], [xy, yy]])
    }
}
