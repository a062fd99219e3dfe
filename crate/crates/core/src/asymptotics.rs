//! Asymptotic formulas for `a_{m,k}(n)`, `b_{m,k}(n)` and `p_k(n)`, and
//! comparison against exact values.
//!
//! The main expansion is
//!
//! ```text
//! a_{m,k}(n) ≈ (2π)^{-k/2} Σ_{ℓ=1}^{N} d_{m,k}(ℓ) n^{-(2+2ℓ+k)/4}
//!              (π√(k/6))^{1+ℓ+k/2} I_{-1-ℓ-k/2}(π√(2kn/3))
//! ```
//!
//! with error `O(n^{-1-N/2-k/4} e^{π√(2kn/3)})`. All values are [`LogReal`]
//! because `e^{π√(2kn/3)}` leaves the `f64` range long before `n` gets large.

use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{d_coeffs, rat_to_f64};
use crate::series::{colored_partition_series, CoefficientTable};
use crate::special::{bessel_i, LogReal};

/// Largest `n` for which exact coefficients are computed unless the caller
/// raises the cap explicitly.
pub const EXACT_NMAX_CAP: usize = 4000;

/// One evaluation point `(m, k, n)` of the expansion truncated after `N` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AsymptoticQuery {
    pub m: u64,
    pub k: u32,
    pub n: u64,
    /// Number of retained terms `N ≥ 1`.
    pub order: usize,
}

/// `⌈k/2⌉ + 3`.
pub fn default_order(k: u32) -> usize {
    (k as usize).div_ceil(2) + 3
}

impl AsymptoticQuery {
    /// Validates and normalises; negative `m` is reflected.
    pub fn new(m: i64, k: i64, n: i64, order: usize) -> Result<Self> {
        let q = AsymptoticQuery {
            m: m.unsigned_abs(),
            k: check_k(k)?,
            n: check_n(n)?,
            order,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn with_default_order(m: i64, k: i64, n: i64) -> Result<Self> {
        let k32 = check_k(k)?;
        Self::new(m, k, n, default_order(k32))
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(Error::invalid("N", "needs N >= 1"));
        }
        if self.k < 1 {
            return Err(Error::invalid("k", "must be >= 1"));
        }
        if self.n < 1 {
            return Err(Error::invalid("n", "must be >= 1"));
        }
        Ok(())
    }
}

fn check_k(k: i64) -> Result<u32> {
    if k < 1 {
        return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
    }
    u32::try_from(k).map_err(|_| Error::invalid("k", format!("{k} is too large")))
}

fn check_n(n: i64) -> Result<u64> {
    if n < 1 {
        return Err(Error::invalid("n", format!("must be >= 1, got {n}")));
    }
    Ok(n as u64)
}

/// `π√(2kn/3)`, the exponential rate.
pub fn exponent(k: f64, n: f64) -> f64 {
    PI * (2.0 * k * n / 3.0).sqrt()
}

fn d_values(q: &AsymptoticQuery) -> Result<Vec<f64>> {
    Ok(d_coeffs(q.m as i64, q.k as i64, q.order)?
        .iter()
        .map(rat_to_f64)
        .collect())
}

/// `Σ_ℓ` of the main expansion with the Bessel argument and the base of
/// the power taken at `k_eff = k - 24j`; the order of `I` always uses `k`.
fn main_sum(q: &AsymptoticQuery, d: &[f64], k_eff: u32, weight: LogReal) -> Result<LogReal> {
    let k = q.k as f64;
    let n = q.n as f64;
    let k_eff = k_eff as f64;
    let x = exponent(k_eff, n);
    let ln_base = (PI * (k_eff / 6.0).sqrt()).ln();
    let ln_prefactor = -0.5 * k * (2.0 * PI).ln();
    let ln_n = n.ln();
    let mut total = LogReal::ZERO;
    for (i, &dl) in d.iter().enumerate() {
        let ell = (i + 1) as f64;
        let s = ell + 0.5 * k;
        let log_scale = ln_prefactor - (2.0 + 2.0 * ell + k) / 4.0 * ln_n + (1.0 + s) * ln_base;
        let term = LogReal::from_f64(dl) * LogReal::exp(log_scale) * bessel_i(-1.0 - s, x)?;
        total = total + term * weight;
    }
    Ok(total)
}

/// The `N`-term expansion of `a_{m,k}(n)`.
pub fn theorem_main(q: &AsymptoticQuery) -> Result<LogReal> {
    q.validate()?;
    main_sum(q, &d_values(q)?, q.k, LogReal::ONE)
}

/// The expansion with the additional terms `j ≥ 1`, `24j < k`, weighted by
/// `p_k(j)` with Bessel argument `π√(2(k-24j)n/3)`. Terms with `k = 24j`
/// vanish identically and are skipped, so for `k ≤ 24` the result equals
/// [`theorem_main`] bit for bit.
pub fn refined_main(q: &AsymptoticQuery) -> Result<LogReal> {
    q.validate()?;
    let d = d_values(q)?;
    let mut total = main_sum(q, &d, q.k, LogReal::ONE)?;
    let jmax = (q.k / 24) as usize;
    if jmax == 0 {
        return Ok(total);
    }
    let partitions = colored_partition_series(q.k as i64, jmax)?;
    for j in 1..=jmax {
        let k_eff = q.k - 24 * j as u32;
        if k_eff == 0 {
            continue;
        }
        let weight = LogReal::from_bigint(&partitions.coeff(j));
        total = total + main_sum(q, &d, k_eff, weight)?;
    }
    Ok(total)
}

fn check_kn(k: i64, n: i64) -> Result<(f64, f64)> {
    Ok((check_k(k)? as f64, check_n(n)? as f64))
}

/// Shared factor `π³ (8n)^{-(9+k)/4} (k/3)^{(k+7)/4} e^{π√(2kn/3)}` in log form.
fn ln_corollary_scale(k: f64, n: f64) -> f64 {
    3.0 * PI.ln() - (9.0 + k) / 4.0 * (8.0 * n).ln()
        + (k + 7.0) / 4.0 * (k / 3.0).ln()
        + exponent(k, n)
}

/// Leading term of `a_{m,k}(n) - a_{r,k}(n)`:
/// `π³ (r² - m²) (8n)^{-(9+k)/4} (k/3)^{(k+7)/4} e^{π√(2kn/3)}`.
pub fn corollary_diff(m: i64, r: i64, k: i64, n: i64) -> Result<LogReal> {
    let (k, n) = check_kn(k, n)?;
    let coeff = i128::from(r) * i128::from(r) - i128::from(m) * i128::from(m);
    if coeff == 0 {
        return Ok(LogReal::ZERO);
    }
    Ok(LogReal::from_f64(coeff as f64) * LogReal::exp(ln_corollary_scale(k, n)))
}

/// Leading term of `b_{m,k}(n)`:
/// `(2m+1) π³ (8n)^{-(9+k)/4} (k/3)^{(k+7)/4} e^{π√(2kn/3)}`.
pub fn corollary_b(m: i64, k: i64, n: i64) -> Result<LogReal> {
    if m < 0 {
        return Err(Error::invalid(
            "m",
            format!("b is defined for m >= 0, got {m}"),
        ));
    }
    let (k, n) = check_kn(k, n)?;
    Ok(LogReal::exp(
        (2.0 * m as f64 + 1.0).ln() + ln_corollary_scale(k, n),
    ))
}

/// Leading term of `p_k(n)`: `2 (k/3)^{(1+k)/4} (8n)^{-(3+k)/4} e^{π√(2kn/3)}`.
pub fn pk_asymptotic(k: i64, n: i64) -> Result<LogReal> {
    let (k, n) = check_kn(k, n)?;
    Ok(LogReal::exp(
        2f64.ln() + (1.0 + k) / 4.0 * (k / 3.0).ln() - (3.0 + k) / 4.0 * (8.0 * n).ln()
            + exponent(k, n),
    ))
}

/// Leading term of `b_{0,k}(n) / p_k(n)`, i.e. `corollary_b(0,k,n) / pk_asymptotic(k,n)`:
/// `π³/(32√2) · (k/(3n))^{3/2}`.
pub fn b0_over_pk(k: i64, n: i64) -> Result<f64> {
    let (k, n) = check_kn(k, n)?;
    Ok(PI.powi(3) / (32.0 * 2f64.sqrt()) * (k / (3.0 * n)).powf(1.5))
}

/// Exact value next to the asymptotic one for a single query.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub query: AsymptoticQuery,
    pub refined: bool,
    #[serde(skip)]
    pub exact_value: BigInt,
    pub exact: LogReal,
    pub approx: LogReal,
    /// `|exact - approx| / |exact|`.
    pub rel_error: f64,
    /// `|exact - approx| / (n^{-1-N/2-k/4} e^{π√(2kn/3)})`.
    pub scaled_residual: f64,
}

/// Holds one exact coefficient table and answers any number of queries
/// against it. Shareable across threads once built.
#[derive(Clone, Debug)]
pub struct Comparator {
    table: CoefficientTable,
}

impl Comparator {
    /// Table for `k` up to `nmax`, refusing `nmax > EXACT_NMAX_CAP`.
    pub fn new(k: i64, nmax: usize) -> Result<Self> {
        Self::with_cap(k, nmax, EXACT_NMAX_CAP)
    }

    pub fn with_cap(k: i64, nmax: usize, cap: usize) -> Result<Self> {
        if nmax > cap {
            return Err(Error::ExactCapExceeded {
                n: nmax as u64,
                cap: cap as u64,
            });
        }
        Ok(Comparator {
            table: CoefficientTable::new(k, nmax)?,
        })
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    pub fn compare(&self, q: &AsymptoticQuery, refined: bool) -> Result<CompareReport> {
        q.validate()?;
        if q.k != self.table.k() {
            return Err(Error::invalid(
                "k",
                format!(
                    "comparator holds k = {}, query has k = {}",
                    self.table.k(),
                    q.k
                ),
            ));
        }
        if q.n as usize > self.table.nmax() {
            return Err(Error::ExactCapExceeded {
                n: q.n,
                cap: self.table.nmax() as u64,
            });
        }
        let exact_value = self.table.a(q.m as i64, q.n as usize)?;
        let exact = LogReal::from_bigint(&exact_value);
        let approx = if refined {
            refined_main(q)?
        } else {
            theorem_main(q)?
        };
        let residual = exact - approx;
        let (k, n, order) = (q.k as f64, q.n as f64, q.order as f64);
        let ln_error_scale = -(1.0 + order / 2.0 + k / 4.0) * n.ln() + exponent(k, n);
        let scaled_residual = if residual.is_zero() {
            0.0
        } else {
            (residual.logmag() - ln_error_scale).exp()
        };
        Ok(CompareReport {
            query: *q,
            refined,
            exact_value,
            exact,
            approx,
            rel_error: approx.rel_diff(exact),
            scaled_residual,
        })
    }

    /// One report per query, evaluated as independent tasks.
    pub fn compare_all(
        &self,
        queries: &[AsymptoticQuery],
        refined: bool,
        exec: Exec,
    ) -> Result<Vec<CompareReport>> {
        exec.map_slice(queries, |q| self.compare(q, refined))
            .into_iter()
            .collect()
    }
}

/// Exact `a_{m,k}(n)` against [`theorem_main`], capped at [`EXACT_NMAX_CAP`].
pub fn compare_exact(q: &AsymptoticQuery) -> Result<CompareReport> {
    Comparator::new(q.k as i64, q.n as usize)?.compare(q, false)
}
