//! Exact rational arithmetic: Bernoulli polynomials, the Taylor coefficients
//! `c_m(ℓ)` of the false theta functions, and `d_{m,k}(ℓ)` defined by
//!
//! ```text
//! q^{k/24} ϑ_m(q) = Σ_{ℓ≥1} d_{m,k}(ℓ) z^ℓ,   q = e^{-z}.
//! ```

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest `f64`, correct even when numerator and denominator overflow.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // fall back on scaled integer division
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64 - 60;
    let (num, den) = if shift > 0 {
        (r.numer().clone(), r.denom() << shift as u64)
    } else {
        (r.numer() << (-shift) as u64, r.denom().clone())
    };
    let q = num.div_floor(&den).to_f64().unwrap_or(f64::NAN);
    q * 2f64.powi(shift as i32)
}

/// Polynomial with rational coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Drops trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Rat::zero(); n + 1];
        c[n] = Rat::one();
        RatPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Product keeping only degrees `0..=order`.
    pub fn mul_trunc(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// `p(x + s)`.
    pub fn shift(&self, s: &Rat) -> Self {
        let lin = RatPoly::from_coeffs(vec![s.clone(), Rat::one()]);
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            acc.mul(&lin).add(&RatPoly::constant(c.clone()))
        })
    }

    /// Truncated Taylor series of `e^{c z}` through `z^order`.
    pub fn exp_series(c: &Rat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rat::one();
        for j in 0..=order {
            coeffs.push(term.clone());
            term = term * c / rat_int(j as i64 + 1);
        }
        Self::from_coeffs(coeffs)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

static BERNOULLI_NUMBERS: OnceLock<RwLock<Vec<Rat>>> = OnceLock::new();

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`. Cached.
pub fn bernoulli_number(n: usize) -> Rat {
    let cache = BERNOULLI_NUMBERS.get_or_init(|| RwLock::new(vec![Rat::one()]));
    if let Some(b) = cache.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = cache.write().expect("bernoulli cache poisoned");
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0
    while table.len() <= n {
        let m = table.len() as u64;
        let s: Rat = table
            .iter()
            .enumerate()
            .map(|(j, b)| b * Rat::from_integer(binomial(m + 1, j as u64)))
            .sum();
        table.push(-s / rat_int(m as i64 + 1));
    }
    table[n].clone()
}

/// `B_n(x) = Σ_j C(n, j) B_j x^{n-j}`.
pub fn bernoulli_polynomial(n: usize) -> RatPoly {
    let mut coeffs = vec![Rat::zero(); n + 1];
    for j in 0..=n {
        coeffs[n - j] = bernoulli_number(j) * Rat::from_integer(binomial(n as u64, j as u64));
    }
    RatPoly::from_coeffs(coeffs)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `c_m(ℓ) = (-1)^{ℓ-1} 2^ℓ / (ℓ! (2ℓ+1)) · (B_{2ℓ+1}(m/2 + 1/4) - B_{2ℓ+1}(m/2 + 3/4))`.
pub fn c_coeff(m: u64, ell: usize) -> Rat {
    let b = bernoulli_polynomial(2 * ell + 1);
    let half_m = Rat::new(BigInt::from(m), BigInt::from(2));
    let diff = b.eval(&(&half_m + rat(1, 4))) - b.eval(&(&half_m + rat(3, 4)));
    let sign = if ell % 2 == 1 { 1 } else { -1 };
    let scale = Rat::new(
        BigInt::from(sign) * (BigInt::one() << ell),
        factorial(ell as u64) * (2 * ell as u64 + 1),
    );
    scale * diff
}

/// `d_{m,k}(1..=lmax)`.
///
/// Composes, as exact series in `z` truncated after `z^lmax`,
///
/// ```text
/// e^{-kz/24} · [ (1 + e^{-mz}) e^{(m+1/2)^2 z/2} Σ_ℓ c_m(ℓ) z^ℓ - 1 ].
/// ```
///
/// The bracket has no constant term because `c_m(0) = 1/2`; a nonzero one
/// is reported as [`Error::InconsistentExpansion`].
pub fn d_coeffs(m: i64, k: i64, lmax: usize) -> Result<Vec<Rat>> {
    if k < 1 {
        return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
    }
    let m = m.unsigned_abs();
    let order = lmax;
    let taylor = RatPoly::from_coeffs((0..=order).map(|l| c_coeff(m, l)).collect());
    let reflect = RatPoly::one().add(&RatPoly::exp_series(&-rat_int(m as i64), order));
    let gauss = RatPoly::exp_series(&rat((2 * m as i64 + 1).pow(2), 8), order);
    let bracket = reflect
        .mul_trunc(&gauss, order)
        .mul_trunc(&taylor, order)
        .sub(&RatPoly::one());
    let constant = bracket.coeff(0);
    if !constant.is_zero() {
        return Err(Error::InconsistentExpansion(constant.to_string()));
    }
    let full = RatPoly::exp_series(&rat(-k, 24), order).mul_trunc(&bracket, order);
    Ok((1..=lmax).map(|l| full.coeff(l)).collect())
}

/// `d_{m,k}(ℓ)` for a single `ℓ ≥ 1`.
pub fn d_coeff(m: i64, k: i64, ell: usize) -> Result<Rat> {
    if ell < 1 {
        return Err(Error::invalid("lmax", "d_{m,k}(l) is defined for l >= 1"));
    }
    Ok(d_coeffs(m, k, ell)?.pop().expect("ell >= 1"))
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// B_n(x) = x^n - 1/(n+1) Σ_{j<n} C(n+1, j) B_j(x): a recurrence on
    /// polynomials that never touches Bernoulli numbers.
    fn bernoulli_by_polynomial_recurrence(nmax: usize) -> Vec<RatPoly> {
        let mut out: Vec<RatPoly> = Vec::new();
        for n in 0..=nmax {
            let mut acc = RatPoly::zero();
            for (j, bj) in out.iter().enumerate() {
                acc = acc.add(&bj.scale(&Rat::from_integer(binomial(n as u64 + 1, j as u64))));
            }
            let p = RatPoly::monomial(n).sub(&acc.scale(&rat(1, n as i64 + 1)));
            out.push(p);
        }
        out
    }

    #[test]
    fn low_degree_bernoulli_polynomials() {
        assert_eq!(bernoulli_polynomial(0), RatPoly::one());
        assert_eq!(
            bernoulli_polynomial(1),
            RatPoly::from_coeffs(vec![rat(-1, 2), rat_int(1)])
        );
        assert_eq!(
            bernoulli_polynomial(2),
            RatPoly::from_coeffs(vec![rat(1, 6), rat_int(-1), rat_int(1)])
        );
        let reference = bernoulli_by_polynomial_recurrence(24);
        for (n, p) in reference.iter().enumerate() {
            assert_eq!(&bernoulli_polynomial(n), p, "degree {n}");
        }
    }

    #[test]
    fn bernoulli_difference_identity() {
        for n in 1..=30 {
            let b = bernoulli_polynomial(n);
            let lhs = b.shift(&rat_int(1)).sub(&b);
            let rhs = RatPoly::monomial(n - 1).scale(&rat_int(n as i64));
            assert_eq!(lhs, rhs, "degree {n}");
        }
    }

    #[test]
    fn bernoulli_numbers_known_values() {
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert!(bernoulli_number(13).is_zero());
    }

    #[test]
    fn c_zero_is_one_half() {
        for m in 0..=50 {
            assert_eq!(c_coeff(m, 0), rat(1, 2), "m={m}");
        }
    }

    #[test]
    fn c_one_for_m_zero() {
        // B_3(x) = x^3 - 3x^2/2 + x/2; B_3(1/4) = 3/64, B_3(3/4) = -3/64
        let b3 = bernoulli_polynomial(3);
        assert_eq!(b3.eval(&rat(1, 4)), rat(3, 64));
        assert_eq!(b3.eval(&rat(3, 4)), rat(-3, 64));
        // (+1) · 2 / (1 · 3) · 6/64
        assert_eq!(c_coeff(0, 1), rat(1, 16));
    }

    #[test]
    fn first_d_values_closed_forms() {
        for m in 0..=5i64 {
            for k in 1..=30i64 {
                let d = d_coeffs(m, k, 3).unwrap();
                assert_eq!(d[0], rat(1, 4));
                assert_eq!(d[1], rat(-k, 96) + rat(1, 16));
                assert_eq!(
                    d[2],
                    rat(-m * m, 16) + rat(-k, 384) + rat(k * k, 4608) + rat(5, 192)
                );
            }
        }
    }

    #[test]
    fn d_is_even_in_m_and_prefix_stable() {
        let long = d_coeffs(3, 7, 8).unwrap();
        assert_eq!(long, d_coeffs(-3, 7, 8).unwrap());
        assert_eq!(long[..4], d_coeffs(3, 7, 4).unwrap()[..]);
        assert_eq!(d_coeff(3, 7, 6).unwrap(), long[5]);
    }

    #[test]
    fn d_parameter_errors() {
        assert!(d_coeffs(0, 0, 3).is_err());
        assert!(d_coeff(0, 3, 0).is_err());
    }

    #[test]
    fn rat_to_f64_handles_huge_parts() {
        let big = Rat::new(BigInt::from(3) << 2000u32, BigInt::from(7) << 1998u32);
        assert!((rat_to_f64(&big) - 12.0 / 7.0).abs() < 1e-15);
        assert_eq!(rat_to_f64(&rat(-1, 4)), -0.25);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rat(&rat(1, 4)), "1/4");
        assert_eq!(format_rat(&rat(-6, 3)), "-2");
    }
}
