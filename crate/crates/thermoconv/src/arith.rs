//! Arithmetic backends.
//!
//! Every probability-carrying type is generic over a [`Scalar`], which is
//! either an exact [`BigRational`] or an `f64`. Entries of embedded tensor
//! powers are far too small for `f64` (think `(0.3 / 10^6)^200`), so each
//! scalar also names a [`Level`] type for per-entry values: exact rationals
//! reuse themselves, floats switch to the log domain via [`LogLevel`].
//! Block *masses* stay in the scalar type, since they are at most one.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Exact = BigRational;

/// Mass-like scalar: probabilities, partial sums, ratios.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Representation of individual entries of (possibly huge) vectors.
    type Level: Level<Mass = Self>;

    /// Whether comparisons are exact.
    const EXACT: bool;

    /// Slack allowed when checking `infidelity <= target`.
    const INFIDELITY_TOL: f64;

    /// Slack used by the normalisation check.
    const NORM_TOL: f64;

    fn zero() -> Self;
    fn one() -> Self;
    /// Exact binary value for rationals; identity for floats.
    fn from_f64(x: f64) -> Result<Self>;
    fn from_rational(x: &BigRational) -> Self;
    fn from_ratio(num: &BigUint, den: &BigUint) -> Self;
    fn to_f64(&self) -> f64;
    /// Natural log of a positive value, `-inf` at zero.
    fn ln(&self) -> f64;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn over(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Equality up to the backend tolerance (`abs_tol` is ignored when exact).
    fn same(&self, other: &Self, abs_tol: f64) -> bool;

    /// `self * part / whole` without forming huge intermediates in float mode.
    fn mass_fraction(&self, part: &BigUint, whole: &BigUint) -> Self;

    /// `coef * prod_k masses[k]^exps[k]`.
    fn multinomial_mass(coef: &BigUint, masses: &[Self], exps: &[u32]) -> Self;

    /// Additive stand-in for masses used in the quadratic pivot search.
    type Weight: Weight;

    /// Rescales `masses` to weights, returning them with `scale` such that
    /// `mass = weight * scale`. Exact masses become integer numerators over a
    /// common denominator, so summing and comparing them never needs a gcd.
    fn to_weights(masses: &[Self]) -> (Vec<Self::Weight>, Self);

    /// `a / b * scale_a / scale_b` as a scalar.
    fn weight_ratio(a: &Self::Weight, b: &Self::Weight, scale_a: &Self, scale_b: &Self) -> Self;

    /// `w * scale` as an `f64`.
    fn weight_mass_f64(w: &Self::Weight, scale: &Self) -> f64;
}

/// Running sums in the pivot search.
pub trait Weight: Clone + Debug + Send + Sync {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn is_zero(&self) -> bool;
    fn ln(&self) -> f64;
    /// Compares `a / b` with `c / d` for positive `b`, `d`; floats treat a
    /// relative gap below `1e-14` as a tie.
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering;
}

impl Weight for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ln(&self) -> f64 {
        ln_bigint(self)
    }
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering {
        (a * d).cmp(&(c * b))
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering {
        let (x, y) = (a / b, c / d);
        if (x - y).abs() <= 1e-14 * x.abs().max(y.abs()) {
            Ordering::Equal
        } else {
            x.total_cmp(&y)
        }
    }
}

/// Per-entry value of a compressed distribution.
pub trait Level: Clone + Debug + Send + Sync + 'static {
    type Mass: Scalar<Level = Self>;

    fn zero() -> Self;
    /// Value of each of `count` equal entries carrying total `mass`.
    fn from_mass(mass: &Self::Mass, count: &BigUint) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn div_int(&self, k: &BigUint) -> Self;
    fn scale(&self, r: &Self::Mass) -> Self;
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Value equality used when merging blocks.
    fn same(&self, other: &Self) -> bool;
    fn is_zero(&self) -> bool;
    fn ln(&self) -> f64;
    fn to_f64(&self) -> f64;
}

/// Natural logarithm of a big unsigned integer, accurate for any size.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of the magnitude of a big integer.
pub fn ln_bigint(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

/// Splits `x` into a mantissa in `[2^63, 2^64)` (or smaller, unshifted) and a binary exponent.
fn top_bits(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_f64().unwrap_or(0.0), 0)
    } else {
        let shift = bits - 64;
        ((x >> shift).to_f64().unwrap_or(0.0), shift as i64)
    }
}

/// `a / b` as an `f64`, correctly scaled even when both operands overflow `f64`.
pub fn ratio_to_f64(a: &BigInt, b: &BigInt) -> f64 {
    if Zero::is_zero(a) {
        return 0.0;
    }
    let sign = if (a.sign() == Sign::Minus) ^ (b.sign() == Sign::Minus) {
        -1.0
    } else {
        1.0
    };
    let (ma, ea) = top_bits(a.magnitude());
    let (mb, eb) = top_bits(b.magnitude());
    let mut value = ma / mb;
    let mut e = ea - eb;
    // Apply the exponent in steps so intermediate powers never overflow.
    while e > 0 {
        let step = e.min(1000);
        value *= 2f64.powi(step as i32);
        e -= step;
    }
    while e < 0 {
        let step = (-e).min(1000);
        value /= 2f64.powi(step as i32);
        e += step;
    }
    sign * value
}

fn rational_to_f64(x: &BigRational) -> f64 {
    ratio_to_f64(x.numer(), x.denom())
}

impl Scalar for BigRational {
    type Level = BigRational;
    const EXACT: bool = true;
    const INFIDELITY_TOL: f64 = 1e-12;
    const NORM_TOL: f64 = 0.0;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
    }
    fn from_rational(x: &BigRational) -> Self {
        x.clone()
    }
    fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn ln(&self) -> f64 {
        if Zero::is_zero(self) {
            f64::NEG_INFINITY
        } else {
            ln_bigint(self.numer()) - ln_bigint(self.denom())
        }
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn over(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn same(&self, other: &Self, _abs_tol: f64) -> bool {
        self == other
    }
    fn mass_fraction(&self, part: &BigUint, whole: &BigUint) -> Self {
        self * BigRational::new(BigInt::from(part.clone()), BigInt::from(whole.clone()))
    }
    fn multinomial_mass(coef: &BigUint, masses: &[Self], exps: &[u32]) -> Self {
        let mut acc = BigRational::from_integer(BigInt::from(coef.clone()));
        for (m, &e) in masses.iter().zip(exps) {
            if e > 0 {
                acc *= m.pow(e as i32);
            }
        }
        acc
    }

    type Weight = BigInt;

    fn to_weights(masses: &[Self]) -> (Vec<BigInt>, Self) {
        use num_integer::Integer;
        let lcm = masses.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
        let weights = masses.iter().map(|m| m.numer() * (&lcm / m.denom())).collect();
        (weights, BigRational::new(BigInt::one(), lcm))
    }

    fn weight_ratio(a: &BigInt, b: &BigInt, scale_a: &Self, scale_b: &Self) -> Self {
        BigRational::new(a.clone(), b.clone()) * scale_a / scale_b
    }

    fn weight_mass_f64(w: &BigInt, scale: &Self) -> f64 {
        ratio_to_f64(&(w * scale.numer()), scale.denom())
    }
}

impl Level for BigRational {
    type Mass = BigRational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn from_mass(mass: &Self, count: &BigUint) -> Self {
        mass / BigRational::from_integer(BigInt::from(count.clone()))
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pow(&self, e: u32) -> Self {
        BigRational::pow(self, e as i32)
    }
    fn div_int(&self, k: &BigUint) -> Self {
        self / BigRational::from_integer(BigInt::from(k.clone()))
    }
    fn scale(&self, r: &Self) -> Self {
        self * r
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ln(&self) -> f64 {
        Scalar::ln(self)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    type Level = LogLevel;
    const EXACT: bool = false;
    const INFIDELITY_TOL: f64 = 1e-9;
    const NORM_TOL: f64 = 1e-12;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Domain(format!("{x} is not finite")))
        }
    }
    fn from_rational(x: &BigRational) -> Self {
        rational_to_f64(x)
    }
    fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        (ln_biguint(num) - ln_biguint(den)).exp()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn over(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn same(&self, other: &Self, abs_tol: f64) -> bool {
        (self - other).abs() <= abs_tol
    }
    fn mass_fraction(&self, part: &BigUint, whole: &BigUint) -> Self {
        if part == whole {
            *self
        } else {
            self * (ln_biguint(part) - ln_biguint(whole)).exp()
        }
    }
    fn multinomial_mass(coef: &BigUint, masses: &[Self], exps: &[u32]) -> Self {
        let mut log = ln_biguint(coef);
        for (&m, &e) in masses.iter().zip(exps) {
            if e > 0 {
                if m == 0.0 {
                    return 0.0;
                }
                log += e as f64 * m.ln();
            }
        }
        log.exp()
    }

    type Weight = f64;

    fn to_weights(masses: &[Self]) -> (Vec<f64>, Self) {
        (masses.to_vec(), 1.0)
    }

    fn weight_ratio(a: &f64, b: &f64, scale_a: &Self, scale_b: &Self) -> Self {
        a / b * scale_a / scale_b
    }

    fn weight_mass_f64(w: &f64, scale: &Self) -> f64 {
        w * scale
    }
}

/// Log-domain entry value used by the float backend; zero is `-inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLevel(pub f64);

/// Relative tolerance under which two float entry values count as equal.
pub const FLOAT_MERGE_TOL: f64 = 1e-13;

impl Level for LogLevel {
    type Mass = f64;

    fn zero() -> Self {
        LogLevel(f64::NEG_INFINITY)
    }
    fn from_mass(mass: &f64, count: &BigUint) -> Self {
        LogLevel(f64::ln(*mass) - ln_biguint(count))
    }
    fn mul(&self, other: &Self) -> Self {
        LogLevel(self.0 + other.0)
    }
    fn pow(&self, e: u32) -> Self {
        if e == 0 {
            LogLevel(0.0)
        } else {
            LogLevel(self.0 * e as f64)
        }
    }
    fn div_int(&self, k: &BigUint) -> Self {
        LogLevel(self.0 - ln_biguint(k))
    }
    fn scale(&self, r: &f64) -> Self {
        LogLevel(self.0 + f64::ln(*r))
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn same(&self, other: &Self) -> bool {
        if self.0 == other.0 {
            return true;
        }
        (self.0 - other.0).abs() <= FLOAT_MERGE_TOL
    }
    fn is_zero(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
    fn ln(&self) -> f64 {
        self.0
    }
    fn to_f64(&self) -> f64 {
        self.0.exp()
    }
}

/// Parses `"a/b"`, plain decimals and scientific notation into an exact rational.
///
/// Decimal strings are read digit by digit, so `"0.7"` becomes exactly `7/10`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num = parse_rational(a)?;
        let den = parse_rational(b)?;
        if Zero::is_zero(&den) {
            return Err(Error::Config(format!("zero denominator in {s:?}")));
        }
        return Ok(num / den);
    }
    let bad = || Error::Config(format!("cannot parse {s:?} as a number"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() {
        <BigInt as Zero>::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Shorthand for building small exact rationals in tests and examples.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("0.7").unwrap(), rational(7, 10));
        assert_eq!(parse_rational("1e-5").unwrap(), rational(1, 100_000));
        assert_eq!(parse_rational("-2.5E1").unwrap(), rational(-25, 1));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn log_of_huge_integers() {
        let x = num_traits::pow(BigUint::from(10u32), 2000);
        let got = ln_biguint(&x);
        assert!((got - 2000.0 * 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn float_multinomial_mass_matches_direct_product() {
        let coef = BigUint::from(3u32);
        let got = f64::multinomial_mass(&coef, &[0.7, 0.3], &[2, 1]);
        assert!((got - 3.0 * 0.49 * 0.3).abs() < 1e-15);
    }
}
