//! Majorisation, thermomajorisation and the embedding map.
//!
//! With Gibbs weights `gamma_i = D_i / D`, the embedding splits `p_i` into
//! `D_i` equal pieces `p_i / D_i`. It sends `gamma` to the uniform vector on
//! `D` outcomes, and thermomajorisation of `p` over `q` is plain majorisation
//! of the embedded vectors. Everything here goes through that route.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::Scalar;
use crate::compressed::{common_dimension, merged_intervals, Block, CompressedDistribution};
use crate::dist::{Distribution, ThermalSystem};
use crate::error::{Error, Result};

/// Integer Gibbs weights `gamma_i = D_i / D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddingSpec {
    numerators: Vec<u64>,
    denominator: u64,
}

impl EmbeddingSpec {
    /// Builds a spec from the numerators `D_i`; `D` is their sum.
    pub fn new(numerators: Vec<u64>) -> Result<Self> {
        if numerators.is_empty() || numerators.contains(&0) {
            return Err(Error::Domain("embedding numerators must be positive".into()));
        }
        let denominator = numerators
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| Error::Domain("embedding denominator overflows u64".into()))?;
        Ok(Self { numerators, denominator })
    }

    /// All `D_i = 1`: the infinite-temperature embedding, which is the identity.
    pub fn uniform(dim: usize) -> Result<Self> {
        Self::new(vec![1; dim])
    }

    /// Rational approximation of a system's Gibbs state with `D <= max_den`.
    ///
    /// Returns the spec together with `max_i |D_i/D - gamma_i|`. Two-level
    /// systems use the best continued-fraction approximation of `gamma_0`;
    /// larger systems scan every `D` and round with largest remainders.
    pub fn from_gibbs(system: &ThermalSystem, max_den: u64) -> Result<(Self, f64)> {
        let gamma = system.gibbs_weights();
        let d = gamma.len() as u64;
        if max_den < d {
            return Err(Error::Domain(format!(
                "embedding precision {max_den} is below the dimension {d}"
            )));
        }
        let flat = gamma.iter().all(|&g| (g - gamma[0]).abs() == 0.0);
        if system.beta() == 0.0 || flat {
            let spec = Self::uniform(gamma.len())?;
            let err = spec.approximation_error(&gamma);
            return Ok((spec, err));
        }
        let spec = if gamma.len() == 2 {
            let (a, b) = limit_denominator(gamma[0], max_den);
            let a = a.clamp(1, b - 1);
            Self::new(vec![a, b - a])?
        } else {
            best_common_denominator(&gamma, max_den)?
        };
        let err = spec.approximation_error(&gamma);
        Ok((spec, err))
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    /// Largest deviation of `D_i / D` from the given weights.
    pub fn approximation_error(&self, gamma: &[f64]) -> f64 {
        self.numerators
            .iter()
            .zip(gamma)
            .map(|(&n, g)| (n as f64 / self.denominator as f64 - g).abs())
            .fold(0.0, f64::max)
    }

    /// The rational Gibbs state `D_i / D` in the requested backend.
    pub fn gibbs_state<S: Scalar>(&self) -> Distribution<S> {
        let den = BigUint::from(self.denominator);
        Distribution::new(
            self.numerators.iter().map(|&n| S::from_ratio(&BigUint::from(n), &den)).collect(),
        )
        .expect("numerators sum to the denominator")
    }

    fn check<S: Scalar>(&self, p: &Distribution<S>) -> Result<()> {
        if p.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() })
        }
    }
}

/// Best rational `a / b` to `x` with `b <= max_den` (continued fractions).
fn limit_denominator(x: f64, max_den: u64) -> (u64, u64) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    let exact = BigRational::from_float(x).expect("Gibbs weights are finite");
    if exact.denom() <= &BigInt::from(max_den) {
        return (exact.numer().to_u64().unwrap(), exact.denom().to_u64().unwrap());
    }
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let max = BigInt::from(max_den);
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max - &q0).div_floor(&q1);
    let b1 = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let b2 = BigRational::new(p1.clone(), q1.clone());
    let dist = |b: &BigRational| {
        let diff = b - &exact;
        if diff < <BigRational as Zero>::zero() {
            -diff
        } else {
            diff
        }
    };
    let best = if dist(&b2) <= dist(&b1) { b2 } else { b1 };
    (best.numer().to_u64().unwrap(), best.denom().to_u64().unwrap())
}

fn best_common_denominator(gamma: &[f64], max_den: u64) -> Result<EmbeddingSpec> {
    let d = gamma.len();
    let mut best: Option<(f64, Vec<u64>)> = None;
    for den in d as u64..=max_den {
        let Some(nums) = largest_remainder(gamma, den) else { continue };
        let err = nums
            .iter()
            .zip(gamma)
            .map(|(&n, g)| (n as f64 / den as f64 - g).abs())
            .fold(0.0, f64::max);
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            best = Some((err, nums));
            if err <= 1e-15 {
                break;
            }
        }
    }
    let (_, nums) = best.ok_or_else(|| Error::Domain("no admissible denominator".into()))?;
    EmbeddingSpec::new(nums)
}

fn largest_remainder(gamma: &[f64], den: u64) -> Option<Vec<u64>> {
    let scaled: Vec<f64> = gamma.iter().map(|g| g * den as f64).collect();
    let mut nums: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let assigned: u64 = nums.iter().sum();
    let mut order: Vec<usize> = (0..gamma.len()).collect();
    order.sort_by(|&a, &b| (scaled[b] - scaled[b].floor()).total_cmp(&(scaled[a] - scaled[a].floor())));
    for &i in order.iter().take(den.checked_sub(assigned)? as usize) {
        nums[i] += 1;
    }
    if nums.contains(&0) {
        None
    } else {
        Some(nums)
    }
}

/// Embeds `p`: one block `(p_i / D_i) x D_i` per level, merged and sorted.
pub fn embed<S: Scalar>(p: &Distribution<S>, spec: &EmbeddingSpec) -> Result<CompressedDistribution<S>> {
    spec.check(p)?;
    let blocks = p
        .entries()
        .iter()
        .zip(spec.numerators())
        .map(|(x, &n)| Block::from_mass(x.clone(), BigUint::from(n)))
        .collect();
    CompressedDistribution::from_blocks(blocks)
}

/// Dense embedding in level order (not sorted): `p_i / D_i` repeated `D_i` times.
pub fn embed_dense<S: Scalar>(p: &Distribution<S>, spec: &EmbeddingSpec) -> Result<Vec<S>> {
    spec.check(p)?;
    let mut out = Vec::with_capacity(spec.denominator() as usize);
    for (x, &n) in p.entries().iter().zip(spec.numerators()) {
        let piece = x.mass_fraction(&BigUint::one(), &BigUint::from(n));
        out.extend(std::iter::repeat(piece).take(n as usize));
    }
    Ok(out)
}

/// Left inverse of [`embed_dense`]: sums each run of `D_i` consecutive entries.
pub fn unembed<S: Scalar>(r: &[S], spec: &EmbeddingSpec) -> Result<Distribution<S>> {
    if r.len() as u64 != spec.denominator() {
        return Err(Error::DimensionMismatch {
            expected: spec.denominator() as usize,
            found: r.len(),
        });
    }
    let mut out = Vec::with_capacity(spec.dim());
    let mut pos = 0usize;
    for &n in spec.numerators() {
        let n = n as usize;
        out.push(r[pos..pos + n].iter().fold(S::zero(), |acc, x| acc.plus(x)));
        pos += n;
    }
    Distribution::new(out)
}

/// Slack for float Lorenz-curve comparisons.
const LORENZ_TOL: f64 = 1e-12;

/// `p ≻ q` for compressed vectors, padding the shorter one with zeros.
///
/// Both Lorenz curves are piecewise linear, so comparing them at the union of
/// block edges decides the relation.
pub fn majorizes<S: Scalar>(p: &CompressedDistribution<S>, q: &CompressedDistribution<S>) -> bool {
    let (p, q) = common_dimension(p, q).expect("padding up never fails");
    let mut lp = S::zero();
    let mut lq = S::zero();
    for iv in merged_intervals(&p, &q) {
        lp = lp.plus(&iv.p_mass);
        lq = lq.plus(&iv.q_mass);
        let deficit = lq.minus(&lp);
        if !deficit.is_negative() && !deficit.same(&S::zero(), LORENZ_TOL) {
            return false;
        }
    }
    true
}

/// `p ≻ q` for dense vectors.
pub fn majorizes_dense<S: Scalar>(p: &Distribution<S>, q: &Distribution<S>) -> bool {
    majorizes(&CompressedDistribution::from_dense(p), &CompressedDistribution::from_dense(q))
}

/// `p ≻^beta q`, decided on the embedded vectors.
pub fn thermo_majorizes<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    spec: &EmbeddingSpec,
) -> Result<bool> {
    Ok(majorizes(&embed(p, spec)?, &embed(q, spec)?))
}

/// Sum of the `k` largest entries.
pub fn lorenz_curve<S: Scalar>(p: &CompressedDistribution<S>, k: &BigUint) -> Result<S> {
    if k > p.total_dim() {
        return Err(Error::Domain(format!("k = {k} exceeds dimension {}", p.total_dim())));
    }
    let mut acc = S::zero();
    let mut remaining = k.clone();
    for b in p.blocks() {
        if remaining.is_zero() {
            break;
        }
        if remaining >= b.multiplicity {
            acc = acc.plus(&b.mass);
            remaining -= &b.multiplicity;
        } else {
            acc = acc.plus(&b.mass.mass_fraction(&remaining, &b.multiplicity));
            remaining = BigUint::zero();
        }
    }
    Ok(acc)
}

/// The Lorenz curve's corners `(k, L(k))`, starting at `(0, 0)`.
pub fn lorenz_points<S: Scalar>(p: &CompressedDistribution<S>) -> Vec<(BigUint, S)> {
    let mut out = vec![(BigUint::zero(), S::zero())];
    let mut k = BigUint::zero();
    let mut acc = S::zero();
    for b in p.blocks() {
        k += &b.multiplicity;
        acc = acc.plus(&b.mass);
        out.push((k.clone(), acc.clone()));
    }
    out
}

/// `x -> lambda x + (1 - lambda) P_ij x`, with `P_ij` swapping entries `i` and `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TTransform<S: Scalar> {
    pub i: usize,
    pub j: usize,
    pub lambda: S,
}

impl<S: Scalar> TTransform<S> {
    pub fn apply(&self, v: &mut [S]) {
        let (a, b) = (v[self.i].clone(), v[self.j].clone());
        let mu = S::one().minus(&self.lambda);
        v[self.i] = self.lambda.times(&a).plus(&mu.times(&b));
        v[self.j] = self.lambda.times(&b).plus(&mu.times(&a));
    }
}

/// At most `len - 1` T-transforms whose composition maps `x` to `y`.
///
/// Both inputs must be sorted non-increasingly with `x ≻ y`. Each step pairs
/// the last index where `x` still exceeds `y` with the first later index
/// where it falls short, and closes one of the two gaps.
pub fn t_transform_chain<S: Scalar>(x: &[S], y: &[S]) -> Result<Vec<TTransform<S>>> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    let tol = if S::EXACT { 0.0 } else { 1e-15 };
    let differs = |a: &S, b: &S| !a.same(b, tol);
    let mut w = x.to_vec();
    let mut chain = Vec::new();
    for _ in 0..=x.len() {
        let Some(j) = (0..w.len()).rev().find(|&i| differs(&w[i], &y[i]) && !w[i].minus(&y[i]).is_negative()) else {
            return Ok(chain);
        };
        let k = (j + 1..w.len())
            .find(|&i| differs(&w[i], &y[i]) && w[i].minus(&y[i]).is_negative())
            .ok_or_else(|| Error::Domain("first vector does not majorise the second".into()))?;
        let over = w[j].minus(&y[j]);
        let under = y[k].minus(&w[k]);
        let delta = if over.total_cmp(&under).is_le() { over } else { under };
        let spread = w[j].minus(&w[k]);
        let t = TTransform { i: j, j: k, lambda: S::one().minus(&delta.over(&spread)) };
        t.apply(&mut w);
        chain.push(t);
    }
    Err(Error::Domain("T-transform chain did not terminate".into()))
}
