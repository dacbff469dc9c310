//! Run-length representation of huge sorted probability vectors.
//!
//! An embedded tensor power has `D^n` entries but only polynomially many
//! distinct values, so it is stored as `(value, multiplicity, mass)` blocks in
//! strictly decreasing value order. Multiplicities are arbitrary precision and
//! the block mass is cached so float mode never has to multiply a tiny value
//! by a huge count.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{Level, Scalar};
use crate::dist::Distribution;
use crate::error::{Error, Result};

/// A run of `multiplicity` equal entries.
#[derive(Debug, Clone)]
pub struct Block<S: Scalar> {
    pub value: S::Level,
    pub multiplicity: BigUint,
    pub mass: S,
}

impl<S: Scalar> Block<S> {
    /// A block holding `mass` spread evenly over `multiplicity` entries.
    pub fn from_mass(mass: S, multiplicity: BigUint) -> Self {
        let value = if mass.is_zero() {
            S::Level::zero()
        } else {
            S::Level::from_mass(&mass, &multiplicity)
        };
        Self { value, multiplicity, mass }
    }
}

/// Sorted, merged blocks with a known total dimension.
#[derive(Debug, Clone)]
pub struct CompressedDistribution<S: Scalar> {
    blocks: Vec<Block<S>>,
    total_dim: BigUint,
}

impl<S: Scalar> CompressedDistribution<S> {
    /// Sorts, merges equal values and validates normalisation.
    pub fn from_blocks(blocks: Vec<Block<S>>) -> Result<Self> {
        if blocks.iter().any(|b| b.multiplicity.is_zero()) {
            return Err(Error::InvalidDistribution("zero multiplicity".into()));
        }
        if blocks.iter().any(|b| b.mass.is_negative()) {
            return Err(Error::InvalidDistribution("negative block mass".into()));
        }
        let out = Self::from_blocks_unchecked(blocks);
        let total = out.total_mass();
        if !total.same(&S::one(), S::NORM_TOL) {
            return Err(Error::InvalidDistribution(format!(
                "block masses sum to {} instead of 1",
                total.to_f64()
            )));
        }
        Ok(out)
    }

    /// Sorts and merges without checking the mass; used for intermediate products.
    pub(crate) fn from_blocks_unchecked(mut blocks: Vec<Block<S>>) -> Self {
        blocks.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut merged: Vec<Block<S>> = Vec::with_capacity(blocks.len());
        for b in blocks {
            match merged.last_mut() {
                Some(last) if last.value.same(&b.value) => {
                    last.multiplicity += &b.multiplicity;
                    last.mass = last.mass.plus(&b.mass);
                    if !S::EXACT && !last.mass.is_zero() {
                        last.value = S::Level::from_mass(&last.mass, &last.multiplicity);
                    }
                }
                _ => merged.push(b),
            }
        }
        let total_dim = merged.iter().map(|b| &b.multiplicity).sum();
        Self { blocks: merged, total_dim }
    }

    /// One block per entry of a dense distribution.
    pub fn from_dense(p: &Distribution<S>) -> Self {
        let one = BigUint::one();
        Self::from_blocks_unchecked(
            p.entries().iter().map(|x| Block::from_mass(x.clone(), one.clone())).collect(),
        )
    }

    /// The uniform distribution on `dim` outcomes.
    pub fn uniform(dim: BigUint) -> Result<Self> {
        if dim.is_zero() {
            return Err(Error::InvalidDistribution("empty uniform distribution".into()));
        }
        Ok(Self::from_blocks_unchecked(vec![Block::from_mass(S::one(), dim)]))
    }

    pub fn blocks(&self) -> &[Block<S>] {
        &self.blocks
    }

    pub fn total_dim(&self) -> &BigUint {
        &self.total_dim
    }

    pub fn total_mass(&self) -> S {
        self.blocks.iter().fold(S::zero(), |acc, b| acc.plus(&b.mass))
    }

    /// Appends zero entries so the total dimension becomes `dim`.
    pub fn padded_to(&self, dim: &BigUint) -> Result<Self> {
        match self.total_dim.cmp(dim) {
            Ordering::Equal => Ok(self.clone()),
            Ordering::Greater => Err(Error::Domain(format!(
                "cannot pad a vector of dimension {} down to {dim}",
                self.total_dim
            ))),
            Ordering::Less => {
                let mut blocks = self.blocks.clone();
                blocks.push(Block {
                    value: S::Level::zero(),
                    multiplicity: dim - &self.total_dim,
                    mass: S::zero(),
                });
                Ok(Self::from_blocks_unchecked(blocks))
            }
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() * other.blocks.len());
        for a in &self.blocks {
            for b in &other.blocks {
                blocks.push(Block {
                    value: a.value.mul(&b.value),
                    multiplicity: &a.multiplicity * &b.multiplicity,
                    mass: a.mass.times(&b.mass),
                });
            }
        }
        Self::from_blocks_unchecked(blocks)
    }

    /// `self ⊗ uniform(k)`: values shrink by `k`, multiplicities grow by `k`.
    pub fn tensor_uniform(&self, k: &BigUint) -> Self {
        if k.is_one() {
            return self.clone();
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                value: b.value.div_int(k),
                multiplicity: &b.multiplicity * k,
                mass: b.mass.clone(),
            })
            .collect();
        Self { blocks, total_dim: &self.total_dim * k }
    }

    /// `n`-fold tensor power, enumerating exponent tuples over the distinct values.
    ///
    /// With `k` blocks there are `C(n + k - 1, k - 1)` tuples; each contributes
    /// value `prod v^e`, multiplicity `multinomial(n; e) prod m^e` and mass
    /// `multinomial(n; e) prod mass^e`.
    pub fn tensor_power(&self, n: u32) -> Self {
        if n == 0 {
            return Self::from_blocks_unchecked(vec![Block::from_mass(S::one(), BigUint::one())]);
        }
        let k = self.blocks.len();
        let masses: Vec<S> = self.blocks.iter().map(|b| b.mass.clone()).collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; k];
        for_each_composition(n, &mut exps, 0, &mut |e| {
            let coef = multinomial(n, e);
            let mut value = S::Level::pow(&self.blocks[0].value, e[0]);
            let mut mult = num_traits::pow(self.blocks[0].multiplicity.clone(), e[0] as usize);
            for j in 1..k {
                if e[j] > 0 {
                    value = value.mul(&self.blocks[j].value.pow(e[j]));
                    mult *= num_traits::pow(self.blocks[j].multiplicity.clone(), e[j] as usize);
                }
            }
            let mass = S::multinomial_mass(&coef, &masses, e);
            out.push(Block { value, multiplicity: coef * mult, mass });
        });
        Self::from_blocks_unchecked(out)
    }

    /// Expands to a dense sorted vector; only sensible for small dimensions.
    pub fn to_dense(&self) -> Result<Vec<S>> {
        let dim: usize = (&self.total_dim)
            .try_into()
            .map_err(|_| Error::Domain("dimension too large to expand".into()))?;
        if dim > 50_000_000 {
            return Err(Error::Domain(format!("refusing to expand {dim} entries")));
        }
        let mut out = Vec::with_capacity(dim);
        for b in &self.blocks {
            let m: usize = (&b.multiplicity).try_into().expect("bounded by total");
            let v = b.mass.mass_fraction(&BigUint::one(), &b.multiplicity);
            out.extend(std::iter::repeat(v).take(m));
        }
        Ok(out)
    }
}

/// A maximal run of positions on which two sorted vectors are both constant.
#[derive(Debug, Clone)]
pub(crate) struct Interval<S: Scalar> {
    pub start: BigUint,
    pub len: BigUint,
    pub p_value: S::Level,
    pub p_mass: S,
    pub q_mass: S,
}

/// Splits two vectors of equal dimension at the union of their block edges.
pub(crate) fn merged_intervals<S: Scalar>(
    p: &CompressedDistribution<S>,
    q: &CompressedDistribution<S>,
) -> Vec<Interval<S>> {
    debug_assert_eq!(p.total_dim(), q.total_dim());
    let (pb, qb) = (p.blocks(), q.blocks());
    let mut out = Vec::with_capacity(pb.len() + qb.len());
    let (mut i, mut j) = (0, 0);
    let mut rem_p = pb.first().map(|b| b.multiplicity.clone()).unwrap_or_default();
    let mut rem_q = qb.first().map(|b| b.multiplicity.clone()).unwrap_or_default();
    let mut start = BigUint::zero();
    while i < pb.len() && j < qb.len() {
        let len = if rem_p < rem_q { rem_p.clone() } else { rem_q.clone() };
        let piece = |b: &Block<S>| {
            if len == b.multiplicity {
                b.mass.clone()
            } else {
                b.mass.mass_fraction(&len, &b.multiplicity)
            }
        };
        out.push(Interval {
            start: start.clone(),
            len: len.clone(),
            p_value: pb[i].value.clone(),
            p_mass: piece(&pb[i]),
            q_mass: piece(&qb[j]),
        });
        start += &len;
        rem_p -= &len;
        rem_q -= &len;
        if rem_p.is_zero() {
            i += 1;
            if i < pb.len() {
                rem_p = pb[i].multiplicity.clone();
            }
        }
        if rem_q.is_zero() {
            j += 1;
            if j < qb.len() {
                rem_q = qb[j].multiplicity.clone();
            }
        }
    }
    out
}

/// Pads the smaller of two vectors with zeros so both share one dimension.
pub(crate) fn common_dimension<S: Scalar>(
    p: &CompressedDistribution<S>,
    q: &CompressedDistribution<S>,
) -> Result<(CompressedDistribution<S>, CompressedDistribution<S>)> {
    let dim = p.total_dim().max(q.total_dim()).clone();
    Ok((p.padded_to(&dim)?, q.padded_to(&dim)?))
}

fn for_each_composition(n: u32, exps: &mut [u32], pos: usize, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = n;
        f(exps);
        return;
    }
    for e in (0..=n).rev() {
        exps[pos] = e;
        for_each_composition(n - e, exps, pos + 1, f);
    }
}

/// `n! / prod e_k!` computed as a product of binomials.
pub fn multinomial(n: u32, exps: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut remaining = n;
    for &e in exps {
        acc *= binomial(remaining, e);
        remaining -= e;
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
