//! Exact i.i.d. interconversion: `n` copies of `p` into `m` copies of `q`.
//!
//! Both sides are padded with Gibbs states so they live on the same system,
//! `P = p^n ⊗ γ^m` and `Q = q^m ⊗ γ^n`. After embedding, Gibbs states become
//! uniform vectors, so the total states are compressed tensor powers times a
//! uniform factor and the optimal infidelity costs `O(t^2)` in the number of
//! distinct entries rather than anything exponential in `n`.

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::approx::optimal_majorizing;
use crate::arith::{Level, Scalar};
use crate::compressed::CompressedDistribution;
use crate::dist::{rel_entropy_variance, shannon_entropy, Distribution};
use crate::error::{Error, Result};
use crate::majorize::{embed, EmbeddingSpec};

/// One interconversion problem `p^n -> q^m` on a fixed embedding.
#[derive(Debug, Clone)]
pub struct ConversionInstance<S: Scalar = f64> {
    pub p: Distribution<S>,
    pub q: Distribution<S>,
    pub spec: EmbeddingSpec,
    pub n: u32,
    pub m: u32,
    /// Append Gibbs states to balance dimensions. Without it the shorter
    /// embedded vector is padded with zeros instead.
    pub gibbs_padding: bool,
}

impl<S: Scalar> ConversionInstance<S> {
    pub fn new(p: Distribution<S>, q: Distribution<S>, spec: EmbeddingSpec, n: u32, m: u32) -> Result<Self> {
        for d in [&p, &q] {
            if d.dim() != spec.dim() {
                return Err(Error::DimensionMismatch { expected: spec.dim(), found: d.dim() });
            }
        }
        if n == 0 {
            return Err(Error::Domain("number of input copies must be positive".into()));
        }
        Ok(Self { p, q, spec, n, m, gibbs_padding: true })
    }

    pub fn without_padding(mut self) -> Self {
        self.gibbs_padding = false;
        self
    }

    pub fn with_outputs(&self, m: u32) -> Self {
        Self { m, ..self.clone() }
    }
}

/// `a^{⊗n}` for a compressed vector.
pub fn tensor_power<S: Scalar>(a: &CompressedDistribution<S>, n: u32) -> CompressedDistribution<S> {
    a.tensor_power(n)
}

/// Embedded total states `(P^, Q^)`.
pub fn total_states<S: Scalar>(
    inst: &ConversionInstance<S>,
) -> Result<(CompressedDistribution<S>, CompressedDistribution<S>)> {
    let p_hat = embed(&inst.p, &inst.spec)?.tensor_power(inst.n);
    let q_hat = embed(&inst.q, &inst.spec)?.tensor_power(inst.m);
    if !inst.gibbs_padding {
        return Ok((p_hat, q_hat));
    }
    let d = BigUint::from(inst.spec.denominator());
    Ok((p_hat.tensor_uniform(&d.pow(inst.m)), q_hat.tensor_uniform(&d.pow(inst.n))))
}

/// `ε*(n, m)`, the least infidelity of any thermal operation `P -> Q`.
pub fn optimal_infidelity<S: Scalar>(inst: &ConversionInstance<S>) -> Result<f64> {
    let (p, q) = total_states(inst)?;
    Ok(optimal_majorizing(&p, &q)?.infidelity())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RateOptions {
    /// Scan every `m` up to the bracket instead of trusting monotonicity.
    pub linear_scan: bool,
    /// Give up when the output count would exceed this.
    pub max_outputs: Option<u32>,
}

const DEFAULT_MAX_OUTPUTS: u32 = 1 << 20;

/// Largest feasible output count for `n` inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    pub n: u32,
    pub m: u32,
    /// `ε*(n, m)` at the reported `m`.
    pub infidelity: f64,
}

impl RateResult {
    pub fn rate(&self) -> BigRational {
        BigRational::new(self.m.into(), self.n.into())
    }

    pub fn rate_f64(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

/// `R*(n, ε) = m*/n`, with `m*` the largest `m` such that `ε*(n, m) <= ε`.
///
/// The search doubles `m` until infeasible, bisects, then re-evaluates a
/// window of two on either side of the answer in parallel. A feasibility
/// pattern in that window that is not monotone aborts with
/// [`Error::Monotonicity`] unless `linear_scan` is set, in which case every
/// `m` up to twice the bracket is evaluated and the largest feasible one wins.
pub fn optimal_rate<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    spec: &EmbeddingSpec,
    n: u32,
    epsilon: f64,
    options: RateOptions,
) -> Result<RateResult> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon {epsilon} must lie in [0, 1)")));
    }
    let gamma = spec.gibbs_state::<S>();
    if q.entries().iter().zip(gamma.entries()).all(|(a, b)| a.same(b, S::NORM_TOL)) {
        return Err(Error::Regime("target equals the Gibbs state; the rate is unbounded".into()));
    }
    let base = ConversionInstance::new(p.clone(), q.clone(), spec.clone(), n, 0)?;
    let cap = options.max_outputs.unwrap_or(DEFAULT_MAX_OUTPUTS);
    let eval = |m: u32| -> Result<f64> { optimal_infidelity(&base.with_outputs(m)) };
    let feasible = |eps_star: f64| eps_star <= epsilon + S::INFIDELITY_TOL;

    // ε*(n, 0) = 0 because everything majorises the uniform vector.
    let mut lo = 0u32;
    let mut lo_eps = 0.0;
    let mut hi = 1u32;
    loop {
        let e = eval(hi)?;
        if !feasible(e) {
            break;
        }
        lo = hi;
        lo_eps = e;
        if hi >= cap {
            return Err(Error::Regime(format!("more than {cap} outputs remain feasible")));
        }
        hi = hi.saturating_mul(2).min(cap);
    }
    log::debug!("rate bracket for n = {n}: [{lo}, {hi}]");

    if options.linear_scan {
        let top = hi.saturating_mul(2).min(cap);
        let values: Vec<(u32, f64)> = (0..=top)
            .into_par_iter()
            .map(|m| eval(m).map(|e| (m, e)))
            .collect::<Result<_>>()?;
        let (m, infidelity) = values
            .into_iter()
            .filter(|&(_, e)| feasible(e))
            .last()
            .expect("m = 0 is always feasible");
        return Ok(RateResult { n, m, infidelity });
    }

    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let e = eval(mid)?;
        if feasible(e) {
            lo = mid;
            lo_eps = e;
        } else {
            hi = mid;
        }
    }

    let window: Vec<u32> = (lo.saturating_sub(2)..=lo.saturating_add(2)).collect();
    let checked: Vec<(u32, f64)> = window
        .par_iter()
        .map(|&m| eval(m).map(|e| (m, e)))
        .collect::<Result<_>>()?;
    for &(m, e) in &checked {
        if feasible(e) != (m <= lo) {
            return Err(Error::Monotonicity {
                m: m as u64,
                detail: format!(
                    "ε*(n = {n}, m = {m}) = {e:.3e} breaks the threshold pattern around m* = {lo} at ε = {epsilon}"
                ),
            });
        }
    }
    Ok(RateResult { n, m: lo, infidelity: lo_eps })
}

/// Mass of the entries of `a^{⊗n}` that are at least `1 / k_n(x)`, where
/// `k_n(x) = floor(exp(n H(a) + x sqrt(n V(a))))`.
///
/// For large `n` the floor changes `ln k_n` by less than `1 / k_n`, so it is
/// only applied while `k_n` is exactly representable.
pub fn typical_tail_mass<S: Scalar>(a: &Distribution<S>, n: u32, x: f64) -> Result<f64> {
    let uniform = Distribution::<S>::uniform(a.dim())?;
    // V(a) is the variance of -ln a, i.e. V(a || uniform).
    let v = rel_entropy_variance(a, &uniform)?;
    if v <= 0.0 {
        return Err(Error::Domain("the tail law needs a distribution with V(a) > 0".into()));
    }
    let nf = n as f64;
    let mut ln_k = nf * shannon_entropy(a) + x * (nf * v).sqrt();
    if ln_k < 53.0 * std::f64::consts::LN_2 {
        ln_k = ln_k.exp().floor().max(1.0).ln();
    }
    let power = CompressedDistribution::from_dense(a).tensor_power(n);
    Ok(power
        .blocks()
        .iter()
        .filter(|b| !b.value.is_zero() && b.value.ln() >= -ln_k - 1e-12 * ln_k.abs().max(1.0))
        .map(|b| b.mass.to_f64())
        .sum())
}
