//! Reference implementations used as test oracles.
//!
//! Everything here works on dense `Vec<f64>` and follows the textbook
//! construction step by step, with no block compression and no pruning, so it
//! shares no code path with the library beyond embedding.

#![allow(dead_code)]

use rand::Rng;
use thermoconv::dist::Distribution;
use thermoconv::majorize::{embed_dense, EmbeddingSpec};

pub fn normalize(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

pub fn random_distribution<R: Rng>(rng: &mut R, dim: usize, allow_zeros: bool) -> Distribution<f64> {
    loop {
        let w: Vec<f64> = (0..dim)
            .map(|_| if allow_zeros && rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.01..1.0) })
            .collect();
        if w.iter().any(|&x| x > 0.0) {
            return Distribution::new(normalize(&w)).expect("normalised");
        }
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, dim: usize, max_numerator: u64) -> EmbeddingSpec {
    EmbeddingSpec::new((0..dim).map(|_| rng.gen_range(1..=max_numerator)).collect()).expect("positive numerators")
}

pub fn tensor(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn power(a: &[f64], n: u32) -> Vec<f64> {
    (0..n).fold(vec![1.0], |acc, _| tensor(&acc, a))
}

/// Dense embedded total states of `p^n -> q^m`, optionally Gibbs padded.
pub fn total_states(
    p: &Distribution<f64>,
    q: &Distribution<f64>,
    spec: &EmbeddingSpec,
    n: u32,
    m: u32,
    padding: bool,
) -> (Vec<f64>, Vec<f64>) {
    let ph = power(&embed_dense(p, spec).unwrap(), n);
    let qh = power(&embed_dense(q, spec).unwrap(), m);
    if !padding {
        return (ph, qh);
    }
    let d = spec.denominator() as usize;
    let u = |k: u32| vec![1.0 / d.pow(k) as f64; d.pow(k)];
    (tensor(&ph, &u(m)), tensor(&qh, &u(n)))
}

fn sorted_desc(v: &[f64], len: usize) -> Vec<f64> {
    let mut s = v.to_vec();
    s.resize(len, 0.0);
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn prefix(v: &[f64]) -> Vec<f64> {
    compensated_prefix(v).into_iter().map(|(hi, lo)| hi + lo).collect()
}

/// Prefix sums as unevaluated pairs `hi + lo` (Neumaier summation), so that
/// differences of nearby prefixes keep their low-order bits.
fn compensated_prefix(v: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let (mut hi, mut lo) = (0.0f64, 0.0f64);
    out.push((0.0, 0.0));
    for &x in v {
        let t = hi + x;
        lo += if hi.abs() >= x.abs() { (hi - t) + x } else { (x - t) + hi };
        hi = t;
        out.push((hi, lo));
    }
    out
}

fn diff(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0) + (a.1 - b.1)
}

/// The fidelity-optimal `p~ ≻ q` built entry by entry, returned with its
/// fidelity to `p`. Segments are chosen from the tail: for the current end
/// `e`, the start `k` minimises `(Q_e - Q_k) / (P_e - P_k)`.
pub fn optimal_majorizing(p: &[f64], q: &[f64]) -> (Vec<f64>, f64) {
    let len = p.len().max(q.len());
    let (ps, qs) = (sorted_desc(p, len), sorted_desc(q, len));
    let (cp, cq) = (compensated_prefix(&ps), compensated_prefix(&qs));
    let mut tilde = vec![0.0; len];
    let mut root = 0.0;
    let mut end = len;
    while end > 0 {
        let mut best: Option<(usize, f64)> = None;
        for k in 0..end {
            let dp = diff(cp[end], cp[k]);
            if dp <= 0.0 {
                continue;
            }
            let ratio = diff(cq[end], cq[k]) / dp;
            if best.map_or(true, |(_, r)| ratio < r) {
                best = Some((k, ratio));
            }
        }
        let (k, r) = best.expect("the head segment always carries mass");
        for i in k..end {
            tilde[i] = r * ps[i];
        }
        root += (diff(cq[end], cq[k]) * diff(cp[end], cp[k])).sqrt();
        end = k;
    }
    (tilde, (root * root).min(1.0))
}

pub fn optimal_infidelity(p: &[f64], q: &[f64]) -> f64 {
    (1.0 - optimal_majorizing(p, q).1).max(0.0)
}

/// `p ≻ q` by comparing every prefix sum of the sorted vectors.
pub fn majorizes(p: &[f64], q: &[f64], tol: f64) -> bool {
    let len = p.len().max(q.len());
    let (cp, cq) = (prefix(&sorted_desc(p, len)), prefix(&sorted_desc(q, len)));
    cp.iter().zip(&cq).all(|(a, b)| a + tol >= *b)
}

/// Mass of the sorted `p` beyond its `k` largest entries.
pub fn tail_mass(p: &[f64], k: usize) -> f64 {
    let s = sorted_desc(p, p.len());
    s.iter().skip(k).sum()
}

pub fn fidelity(p: &[f64], q: &[f64]) -> f64 {
    let s: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    s * s
}

/// A random doubly stochastic matrix, as a convex mixture of permutations.
pub fn random_bistochastic<R: Rng>(rng: &mut R, dim: usize, terms: usize) -> Vec<Vec<f64>> {
    let weights = normalize(&(0..terms).map(|_| rng.gen_range(0.0..1.0)).collect::<Vec<_>>());
    let mut b = vec![vec![0.0; dim]; dim];
    for w in weights {
        let mut perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        for (i, &j) in perm.iter().enumerate() {
            b[i][j] += w;
        }
    }
    b
}

pub fn apply(b: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    b.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}
