//! Exact q-series: the Euler product, colored partitions, false theta
//! functions and the coefficients `a_{m,k}(n)`, `b_{m,k}(n)`.
//!
//! Everything here is arbitrary-precision integer arithmetic on series
//! truncated at a fixed order `nmax`. The generating function of `a_{m,k}(n)`
//! for fixed `m` is `ϑ_m(q) / (q)_∞^k`, so a whole table is one colored
//! partition series plus one sparse product per `m`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::laurent::LaurentPoly;

/// Sparse series: `(exponent, coefficient)` pairs, ascending, no zeros.
pub type SparseSeries = Vec<(usize, i64)>;

/// Power series in `q` with integer coefficients, truncated after `q^nmax`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(nmax: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); nmax + 1],
        }
    }

    pub fn one(nmax: usize) -> Self {
        let mut s = Self::zero(nmax);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from its coefficient list; `nmax = coeffs.len() - 1`.
    ///
    /// # Panics
    /// Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 term");
        IntSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_sparse(terms: &[(usize, i64)], nmax: usize) -> Self {
        let mut s = Self::zero(nmax);
        for &(e, c) in terms {
            if e <= nmax {
                s.coeffs[e] += c;
            }
        }
        s
    }

    pub fn nmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, nmax: usize) -> Self {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().take(nmax + 1).cloned().collect();
        coeffs.resize(nmax + 1, BigInt::zero());
        IntSeries { coeffs }
    }

    /// Nonzero terms as `(exponent, coefficient)` references.
    pub fn support(&self) -> Vec<(usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let nmax = self.nmax().min(other.nmax());
        IntSeries {
            coeffs: (0..=nmax)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let nmax = self.nmax().min(other.nmax());
        IntSeries {
            coeffs: (0..=nmax)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated product; the result has the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, Exec::default())
    }

    /// Dense convolution, one output coefficient per task.
    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        let nmax = self.nmax().min(other.nmax());
        // iterate over the sparser operand
        let (sparse, dense) = if self.support().len() <= other.support().len() {
            (self, other)
        } else {
            (other, self)
        };
        let terms = sparse.support();
        let coeffs = exec.map_range(0..nmax + 1, |i| {
            let mut acc = BigInt::zero();
            for &(e, c) in &terms {
                if e > i {
                    break;
                }
                acc += c * &dense.coeffs[i - e];
            }
            acc
        });
        IntSeries { coeffs }
    }

    /// Product with a sparse series of small coefficients.
    pub fn mul_sparse(&self, terms: &[(usize, i64)], exec: Exec) -> Self {
        let nmax = self.nmax();
        let coeffs = exec.map_range(0..nmax + 1, |i| sparse_dot(terms, &self.coeffs, i));
        IntSeries { coeffs }
    }

    /// Exact quotient `self / divisor`. The divisor's constant term must be ±1.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let lead = &divisor.coeffs[0];
        if lead.abs() != BigInt::one() {
            return Err(Error::Domain(format!(
                "series division needs a unit constant term, got {lead}"
            )));
        }
        let nmax = self.nmax().min(divisor.nmax());
        let tail: Vec<(usize, &BigInt)> = divisor
            .support()
            .into_iter()
            .filter(|&(e, _)| e > 0)
            .collect();
        let negate = lead.is_negative();
        let mut out: Vec<BigInt> = Vec::with_capacity(nmax + 1);
        for i in 0..=nmax {
            let mut acc = self.coeffs[i].clone();
            for &(e, c) in &tail {
                if e > i {
                    break;
                }
                acc -= c * &out[i - e];
            }
            out.push(if negate { -acc } else { acc });
        }
        Ok(IntSeries { coeffs: out })
    }

    /// Multiplicative inverse, which exists iff the constant term is ±1.
    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.nmax()).div(self)
    }
}

fn sparse_dot(terms: &[(usize, i64)], dense: &[BigInt], i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for &(e, c) in terms {
        if e > i {
            break;
        }
        acc += &dense[i - e] * c;
    }
    acc
}

fn check_k(k: i64) -> Result<u32> {
    if k < 1 {
        return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
    }
    u32::try_from(k).map_err(|_| Error::invalid("k", format!("{k} is too large")))
}

/// Nonzero terms of `(q)_∞` up to `q^nmax`, from the pentagonal number theorem.
pub fn euler_terms(nmax: usize) -> SparseSeries {
    let mut terms = vec![(0usize, 1i64)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let lower = j * (3 * j - 1) / 2;
        let upper = j * (3 * j + 1) / 2;
        if lower > nmax {
            break;
        }
        terms.push((lower, sign));
        if upper <= nmax {
            terms.push((upper, sign));
        }
    }
    terms
}

/// `(q)_∞ = Π_{j≥1} (1 - q^j)` truncated at `nmax`.
pub fn euler_series(nmax: usize) -> IntSeries {
    IntSeries::from_sparse(&euler_terms(nmax), nmax)
}

/// Generating function `1/(q)_∞^k` of partitions into `k` colors.
///
/// Computed as `k` successive exact divisions by the sparse pentagonal
/// series, each of cost `O(nmax^{3/2})`.
pub fn colored_partition_series(k: i64, nmax: usize) -> Result<IntSeries> {
    let k = check_k(k)?;
    let euler = euler_series(nmax);
    let mut p = IntSeries::one(nmax);
    for _ in 0..k {
        p = p.div(&euler)?;
    }
    Ok(p)
}

/// Nonzero terms of the false theta function
/// `ϑ_m(q) = (1 + q^{|m|}) Σ_{n≥0} (-1)^n q^{n(n+1)/2 + n|m|} - 1`.
pub fn false_theta_terms(m: i64, nmax: usize) -> SparseSeries {
    let m = m.unsigned_abs() as usize;
    let mut dense = vec![0i64; nmax + 1];
    dense[0] -= 1;
    for j in 0usize.. {
        let e = j * (j + 1) / 2 + j * m;
        if e > nmax {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        dense[e] += sign;
        if e + m <= nmax {
            dense[e + m] += sign;
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .collect()
}

pub fn false_theta_series(m: i64, nmax: usize) -> IntSeries {
    IntSeries::from_sparse(&false_theta_terms(m, nmax), nmax)
}

/// The series `Σ_n a_{m,k}(n) q^n = ϑ_m(q) / (q)_∞^k`.
pub fn coeff_a_series(m: i64, k: i64, nmax: usize) -> Result<IntSeries> {
    Ok(CoefficientTable::new(k, nmax)?.a_series(m, Exec::default()))
}

/// `b_{m,k}(n) = a_{m,k}(n) - a_{m+1,k}(n)`, defined for `m ≥ 0`.
pub fn coeff_b(m: i64, k: i64, n: usize) -> Result<BigInt> {
    CoefficientTable::new(k, n)?.b(m, n)
}

/// Precomputed `1/(q)_∞^k` from which any `a_{m,k}(n)`, `n ≤ nmax`, is a
/// sparse dot product of length `O(√n)`.
///
/// Immutable once built, so a single table can serve concurrent readers.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    k: u32,
    partitions: IntSeries,
}

impl CoefficientTable {
    pub fn new(k: i64, nmax: usize) -> Result<Self> {
        let partitions = colored_partition_series(k, nmax)?;
        Ok(CoefficientTable {
            k: k as u32,
            partitions,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn nmax(&self) -> usize {
        self.partitions.nmax()
    }

    pub fn partitions(&self) -> &IntSeries {
        &self.partitions
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.nmax() {
            return Err(Error::invalid(
                "n",
                format!("{n} exceeds the table order {}", self.nmax()),
            ));
        }
        Ok(())
    }

    /// `p_k(n)`.
    pub fn p(&self, n: usize) -> Result<BigInt> {
        self.check_n(n)?;
        Ok(self.partitions.coeffs[n].clone())
    }

    /// `a_{m,k}(n)`; negative `m` is reflected.
    pub fn a(&self, m: i64, n: usize) -> Result<BigInt> {
        self.check_n(n)?;
        if m.unsigned_abs() as usize > n {
            return Ok(BigInt::zero());
        }
        Ok(sparse_dot(
            &false_theta_terms(m, n),
            self.partitions.coeffs(),
            n,
        ))
    }

    pub fn b(&self, m: i64, n: usize) -> Result<BigInt> {
        if m < 0 {
            return Err(Error::invalid(
                "m",
                format!("b is defined for m >= 0, got {m}"),
            ));
        }
        Ok(self.a(m, n)? - self.a(m + 1, n)?)
    }

    /// Full series of `a_{m,k}(n)` over `n ≤ nmax`.
    pub fn a_series(&self, m: i64, exec: Exec) -> IntSeries {
        self.partitions
            .mul_sparse(&false_theta_terms(m, self.nmax()), exec)
    }

    /// `a_{m,k}(n)` for every `m` in `ms`, one task per `m`.
    pub fn a_values(&self, ms: &[i64], n: usize, exec: Exec) -> Result<Vec<BigInt>> {
        self.check_n(n)?;
        exec.map_slice(ms, |&m| self.a(m, n)).into_iter().collect()
    }

    /// The Laurent polynomial `Σ_m a_{m,k}(n) ζ^m`.
    pub fn row(&self, n: usize, exec: Exec) -> Result<LaurentPoly> {
        let width = n as i64;
        let half: Vec<i64> = (0..=width).collect();
        let values = self.a_values(&half, n, exec)?;
        let mut row = LaurentPoly::zero();
        for (m, v) in half.into_iter().zip(values) {
            row.set(m, v.clone());
            row.set(-m, v);
        }
        Ok(row)
    }

    /// `b_{m,k}(n)` for `m = 0..=n`.
    pub fn b_row(&self, n: usize, exec: Exec) -> Result<Vec<BigInt>> {
        let ms: Vec<i64> = (0..=n as i64 + 1).collect();
        let a = self.a_values(&ms, n, exec)?;
        Ok(a.windows(2).map(|w| &w[0] - &w[1]).collect())
    }
}
