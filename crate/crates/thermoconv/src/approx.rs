//! Optimal approximate majorisation.
//!
//! Given sorted `p` and `q`, [`optimal_majorizing`] builds the vector `p~`
//! closest to `p` in fidelity among all vectors majorising `q`. It is `p`
//! rescaled piecewise: walking from the tail, each segment `[l_j, l_{j-1})`
//! starts where the ratio of `q`-mass to `p`-mass over the segment is
//! smallest, and `p~ = r_j p` there. The fidelity then factorises as
//! `sqrt F = Σ_j sqrt(Δq_j Δp_j)`.
//!
//! Both inputs are constant on the intervals between consecutive block edges,
//! and on such an interval the segment ratio is a mediant of a fixed ratio
//! with the running one, hence monotone in the left end point. The minimum is
//! therefore always attained at an edge (ties resolving to the left edge),
//! which turns a scan over `D^n` positions into one over `t` intervals and
//! costs `O(t^2)`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{Exact, Level, Scalar, Weight};
use crate::compressed::{common_dimension, merged_intervals, Block, CompressedDistribution};
use crate::dist::{tv_distance, Distribution};
use crate::error::{Error, Result};
use crate::majorize::{embed, embed_dense, t_transform_chain, thermo_majorizes, unembed, EmbeddingSpec};

/// Optimal majorising vector together with its segment structure.
#[derive(Debug, Clone)]
pub struct MajorizationWitness<S: Scalar> {
    /// The optimal `p~`, which majorises the target.
    pub tilde_p: CompressedDistribution<S>,
    /// One-based pivots `l_0 = D + 1 > l_1 > ... > l_N = 1`.
    pub pivots: Vec<BigUint>,
    /// `ratios[j - 1] = r_j`, strictly increasing.
    pub ratios: Vec<S>,
    /// `F(p, p~)`.
    pub fidelity: f64,
}

impl<S: Scalar> MajorizationWitness<S> {
    pub fn infidelity(&self) -> f64 {
        (1.0 - self.fidelity).max(0.0)
    }
}

/// Keys within this log-distance are re-compared exactly.
const NEAR_TIE: f64 = 1e-9;

struct Candidate<W> {
    k: usize,
    key: f64,
    dq: W,
    dp: W,
}

/// The fidelity-optimal `p~ ≻ q`; unequal dimensions are padded with zeros.
pub fn optimal_majorizing<S: Scalar>(
    p: &CompressedDistribution<S>,
    q: &CompressedDistribution<S>,
) -> Result<MajorizationWitness<S>> {
    let (p, q) = common_dimension(p, q)?;
    let intervals = merged_intervals(&p, &q);
    let p_masses: Vec<S> = intervals.iter().map(|iv| iv.p_mass.clone()).collect();
    let q_masses: Vec<S> = intervals.iter().map(|iv| iv.q_mass.clone()).collect();
    let (wp, sp) = S::to_weights(&p_masses);
    let (wq, sq) = S::to_weights(&q_masses);

    // Segments from the tail towards the head: (start interval, end interval, Δq, Δp).
    let mut segments: Vec<(usize, usize, S::Weight, S::Weight)> = Vec::new();
    let mut end = intervals.len();
    while end > 0 {
        let mut dp = <S::Weight as Weight>::zero();
        let mut dq = <S::Weight as Weight>::zero();
        let mut best: Option<Candidate<S::Weight>> = None;
        for k in (0..end).rev() {
            dp.add_assign(&wp[k]);
            dq.add_assign(&wq[k]);
            if dp.is_zero() {
                continue;
            }
            let key = dq.ln() - dp.ln();
            let replace = match &best {
                None => true,
                Some(b) if key < b.key - NEAR_TIE => true,
                // Scanning leftwards, so a tie must go to the current (smaller) index.
                Some(b) if key <= b.key + NEAR_TIE => {
                    S::Weight::cmp_ratio(&dq, &dp, &b.dq, &b.dp) != Ordering::Greater
                }
                Some(_) => false,
            };
            if replace {
                best = Some(Candidate { k, key, dq: dq.clone(), dp: dp.clone() });
            }
        }
        let best = best.ok_or_else(|| {
            Error::InvalidDistribution("initial vector carries no mass".into())
        })?;
        segments.push((best.k, end, best.dq, best.dp));
        end = best.k;
    }

    let mut pivots = vec![p.total_dim() + BigUint::one()];
    let mut ratios = Vec::with_capacity(segments.len());
    let mut root_fidelity = 0.0;
    let mut blocks = Vec::with_capacity(intervals.len());
    for (start, stop, dq, dp) in &segments {
        pivots.push(&intervals[*start].start + BigUint::one());
        let r = S::weight_ratio(dq, dp, &sq, &sp);
        root_fidelity += (S::weight_mass_f64(dq, &sq) * S::weight_mass_f64(dp, &sp)).sqrt();
        for iv in &intervals[*start..*stop] {
            let value = if iv.p_value.is_zero() || r.is_zero() {
                S::Level::zero()
            } else {
                iv.p_value.scale(&r)
            };
            blocks.push(Block { value, multiplicity: iv.len.clone(), mass: iv.p_mass.times(&r) });
        }
        ratios.push(r);
    }
    Ok(MajorizationWitness {
        tilde_p: CompressedDistribution::from_blocks_unchecked(blocks),
        pivots,
        ratios,
        fidelity: (root_fidelity * root_fidelity).min(1.0),
    })
}

/// `min { ε : p ≻^β_ε q }`, the least infidelity with which any thermal
/// operation can turn `p` into `q`.
pub fn min_interconversion_infidelity<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    spec: &EmbeddingSpec,
) -> Result<f64> {
    Ok(optimal_majorizing(&embed(p, spec)?, &embed(q, spec)?)?.infidelity())
}

fn sorted_with_permutation<S: Scalar>(v: &[S]) -> (Vec<S>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    (idx.iter().map(|&i| v[i].clone()).collect(), idx)
}

/// A final state `q~` with `p ≻^β q~` and the optimal infidelity to `q`.
///
/// Works on dense embedded vectors, so the embedding denominator must be
/// small. The map is a chain of T-transforms taking the optimal `p~` to
/// `q`; the same chain applied to the embedded `p` gives `q~` after undoing
/// the sort and the embedding.
pub fn smoothed_target<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    spec: &EmbeddingSpec,
) -> Result<Distribution<S>> {
    if thermo_majorizes(p, q, spec)? {
        return Ok(q.clone());
    }
    let (p_sorted, _) = sorted_with_permutation(&embed_dense(p, spec)?);
    let (q_sorted, q_perm) = sorted_with_permutation(&embed_dense(q, spec)?);
    let witness = optimal_majorizing(&embed(p, spec)?, &embed(q, spec)?)?;
    let tilde = witness.tilde_p.to_dense()?;
    let chain = t_transform_chain(&tilde, &q_sorted)?;
    let mut image = p_sorted;
    for t in &chain {
        t.apply(&mut image);
    }
    let mut unsorted = vec![S::zero(); image.len()];
    for (pos, &orig) in q_perm.iter().enumerate() {
        unsorted[orig] = image[pos].clone();
    }
    unembed(&unsorted, spec)
}

/// Total-variation pre-witness: truncates the sorted tail of `p`.
///
/// `M` is the largest count whose leading mass is at most `1 - ε`. The first
/// `M` sorted entries are kept, `ε` is added to the first and the leftover
/// `1 - ε - S_M` to the `M`-th. The result is expressed in the sorted order of
/// `p`; the achieved distance is returned because it can exceed `ε`.
pub fn tv_pre_witness<S: Scalar>(
    p: &Distribution<S>,
    q: &Distribution<S>,
    epsilon: &S,
) -> Result<(Distribution<S>, f64)> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if epsilon.is_negative() || epsilon.total_cmp(&S::one()) != Ordering::Less {
        return Err(Error::Domain("epsilon must lie in [0, 1)".into()));
    }
    let sorted = p.sorted_desc();
    let budget = S::one().minus(epsilon);
    let tol = if S::EXACT { 0.0 } else { 1e-12 };
    let mut head = S::zero();
    let mut m = 0;
    for x in &sorted {
        let next = head.plus(x);
        let over = next.minus(&budget);
        if over.is_negative() || over.same(&S::zero(), tol) {
            head = next;
            m += 1;
        } else {
            break;
        }
    }
    let sorted_p = Distribution::new(sorted.clone())?;
    if m == 0 {
        let sharp = Distribution::sharp(p.dim(), 0)?;
        let dist = tv_distance(&sorted_p, &sharp)?;
        return Ok((sharp, dist));
    }
    let mut out = vec![S::zero(); p.dim()];
    out[..m].clone_from_slice(&sorted[..m]);
    out[0] = out[0].plus(epsilon);
    out[m - 1] = out[m - 1].plus(&budget.minus(&head));
    let tilde = Distribution::new(out)?;
    let dist = tv_distance(&sorted_p, &tilde)?;
    Ok((tilde, dist))
}

/// Least infidelity `1 - F(p, p~)` over qubit states `p~ ≻^β q`.
///
/// This is smoothing of the *initial* state before thermomajorisation,
/// without embedding. For a qubit, thermal operations order states on each
/// side of the Gibbs point, so the admissible `p~_0` form at most two
/// intervals `[0, t_lo]` and `[t_hi, 1]`; their end points are found by
/// bisection and the concave fidelity is maximised on each.
pub fn qubit_pre_thermo_infidelity(
    p: &Distribution<f64>,
    q: &Distribution<f64>,
    spec: &EmbeddingSpec,
) -> Result<f64> {
    if spec.dim() != 2 || p.dim() != 2 || q.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim().max(q.dim()) });
    }
    // Decided in exact arithmetic on the binary values, so that the boundary
    // is located to the last bit rather than to the float majorisation slack.
    let exact_qubit = |t: f64| -> Result<Distribution<Exact>> {
        let t = Exact::from_f64(t)?;
        let rest = <Exact as Scalar>::one().minus(&t);
        Distribution::new(vec![t, rest])
    };
    let q_exact = exact_qubit(q.entries()[0])?;
    let feasible = |t: f64| -> Result<bool> { thermo_majorizes(&exact_qubit(t)?, &q_exact, spec) };
    let g0 = spec.numerators()[0] as f64 / spec.denominator() as f64;
    // Bisect between an infeasible point `bad` and a feasible point `good`.
    let boundary = |mut bad: f64, mut good: f64| -> Result<f64> {
        for _ in 0..200 {
            let mid = 0.5 * (bad + good);
            if mid == bad || mid == good {
                break;
            }
            if feasible(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok(good)
    };
    let (p0, p1) = (p.entries()[0], p.entries()[1]);
    let fid = |t: f64| ((p0 * t).sqrt() + (p1 * (1.0 - t)).sqrt()).powi(2);
    let mut best: f64 = 0.0;
    if feasible(1.0)? {
        let hi = if feasible(g0)? { g0 } else { boundary(g0, 1.0)? };
        best = best.max(fid(p0.clamp(hi, 1.0)));
    }
    if feasible(0.0)? {
        let lo = if feasible(g0)? { g0 } else { boundary(g0, 0.0)? };
        best = best.max(fid(p0.clamp(0.0, lo)));
    }
    Ok((1.0 - best).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, Exact};
    use crate::dist::infidelity;

    fn three_to_one() -> (Distribution<Exact>, Distribution<Exact>, EmbeddingSpec) {
        (
            Distribution::parse(&["1", "0"]).unwrap(),
            Distribution::parse(&["1/2", "1/2"]).unwrap(),
            EmbeddingSpec::new(vec![3, 1]).unwrap(),
        )
    }

    const EPS0: f64 = 0.028_595_479_208_968_5;

    #[test]
    fn three_to_one_witness_is_exact() {
        let (p, q, spec) = three_to_one();
        let w = optimal_majorizing(&embed(&p, &spec).unwrap(), &embed(&q, &spec).unwrap()).unwrap();
        let dense = w.tilde_p.to_dense().unwrap();
        assert_eq!(dense, vec![rational(1, 2), rational(1, 4), rational(1, 4), rational(0, 1)]);
        let piv: Vec<u32> = w.pivots.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(piv, vec![5, 2, 1]);
        assert_eq!(w.ratios, vec![rational(3, 4), rational(3, 2)]);
        assert!((w.infidelity() - (3.0 - 2.0 * 2f64.sqrt()) / 6.0).abs() < 1e-15);
        assert!((w.infidelity() - EPS0).abs() < 1e-15);
    }

    #[test]
    fn already_majorising_gives_identity() {
        let p = Distribution::parse(&["3/5", "3/10", "1/10"]).unwrap();
        let q = Distribution::parse(&["1/2", "3/10", "1/5"]).unwrap();
        let w = optimal_majorizing(
            &CompressedDistribution::from_dense(&p),
            &CompressedDistribution::from_dense(&q),
        )
        .unwrap();
        assert_eq!(w.fidelity, 1.0);
        assert_eq!(w.ratios, vec![rational(1, 1)]);
    }

    #[test]
    fn flat_examples() {
        let id = EmbeddingSpec::uniform(4).unwrap();
        let p = Distribution::parse(&["1/4", "1/4", "1/4", "1/4"]).unwrap();
        let q = Distribution::parse(&["1/2", "1/2", "0", "0"]).unwrap();
        assert!((min_interconversion_infidelity(&p, &q, &id).unwrap() - 0.5).abs() < 1e-15);
        let id3 = EmbeddingSpec::uniform(3).unwrap();
        let p = Distribution::from_slice(&[0.5, 0.3, 0.2]).unwrap();
        let q = Distribution::from_slice(&[0.5, 0.5, 0.0]).unwrap();
        assert!((min_interconversion_infidelity(&p, &q, &id3).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn smoothed_target_attains_optimum() {
        let (p, q, spec) = three_to_one();
        let qt = smoothed_target(&p, &q, &spec).unwrap();
        assert!(thermo_majorizes(&p, &qt, &spec).unwrap());
        assert!((infidelity(&q, &qt).unwrap() - EPS0).abs() < 1e-15);
        assert_eq!(smoothed_target(&q, &q, &spec).unwrap(), q);
        let gamma = spec.gibbs_state::<Exact>();
        assert_eq!(smoothed_target(&q, &gamma, &spec).unwrap(), gamma);
    }

    #[test]
    fn tv_examples() {
        let p = Distribution::from_slice(&[0.5, 0.3, 0.2]).unwrap();
        let q = Distribution::from_slice(&[0.6, 0.4, 0.0]).unwrap();
        let (t, d) = tv_pre_witness(&p, &q, &0.1).unwrap();
        for (a, b) in t.entries().iter().zip([0.6, 0.4, 0.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((d - 0.2).abs() < 1e-15);
        let (t, d) = tv_pre_witness(&p, &q, &0.0).unwrap();
        assert_eq!(t.entries(), p.entries());
        assert_eq!(d, 0.0);
        let sharp = Distribution::from_slice(&[1.0, 0.0, 0.0]).unwrap();
        let (t, d) = tv_pre_witness(&sharp, &q, &0.3).unwrap();
        assert_eq!(t, sharp);
        assert_eq!(d, 0.0);
        assert!(tv_pre_witness(&p, &q, &1.0).is_err());
    }

    #[test]
    fn qubit_pre_smoothing_of_three_to_one() {
        let spec = EmbeddingSpec::new(vec![3, 1]).unwrap();
        let p = Distribution::from_slice(&[1.0, 0.0]).unwrap();
        let q = Distribution::from_slice(&[0.5, 0.5]).unwrap();
        let e = qubit_pre_thermo_infidelity(&p, &q, &spec).unwrap();
        assert!((e - 0.5).abs() < 1e-12, "{e}");
        assert_eq!(qubit_pre_thermo_infidelity(&q, &q, &spec).unwrap(), 0.0);
    }
}
