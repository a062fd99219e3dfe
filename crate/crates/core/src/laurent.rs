//! Laurent polynomials in ζ, the `χ_{2m+1}` decomposition, and a brute-force
//! two-variable expansion of `q^{k/24}(ζ^{1/2} - ζ^{-1/2}) h_k(w;τ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest `nmax` accepted by [`full_expansion_oracle`]. The oracle keeps
/// `(nmax + 1) · (2·nmax + 1)` big integers alive at once.
pub const ORACLE_NMAX_CAP: usize = 400;

/// Integer Laurent polynomial `Σ_m c_m ζ^m`. Zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (m, c) in pairs {
            let c = c.into() + p.get(m);
            p.set(m, c);
        }
        p
    }

    pub fn get(&self, m: i64) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, m: i64, c: BigInt) {
        if c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |m|` over nonzero coefficients, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().map(|m| m.unsigned_abs()).max()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    /// Value at ζ = 1.
    pub fn sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    fn asymmetry(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .find(|(&m, c)| self.coeffs.get(&-m) != Some(*c))
            .map(|(&m, _)| m)
    }
}

/// Writes a symmetric row as `Σ_{m≥0} b_m χ_{2m+1}(ζ^{1/2})`, where
/// `χ_{2m+1}(ζ^{1/2}) = ζ^{-m} + … + ζ^m`. Returns `b_0..b_d`, `d` the degree.
pub fn chi_decompose(row: &LaurentPoly) -> Result<Vec<BigInt>> {
    if let Some(m) = row.asymmetry() {
        return Err(Error::Asymmetric(m));
    }
    let Some(deg) = row.degree() else {
        return Ok(Vec::new());
    };
    let deg = deg as i64;
    Ok((0..=deg).map(|m| row.get(m) - row.get(m + 1)).collect())
}

/// Inverse of [`chi_decompose`].
pub fn chi_reconstruct(b: &[BigInt]) -> LaurentPoly {
    // coefficient of ζ^j is Σ_{m ≥ |j|} b_m
    let mut row = LaurentPoly::zero();
    let mut tail = BigInt::zero();
    for (m, bm) in b.iter().enumerate().rev() {
        tail += bm;
        let m = m as i64;
        row.set(m, tail.clone());
        row.set(-m, tail.clone());
    }
    row
}

/// Two-variable expansion of `q^{k/24}(ζ^{1/2}-ζ^{-1/2}) h_k(w;τ)` straight
/// from the product formula, one Laurent row per power of `q`.
///
/// The factor `(1 - ζ^{-1})` of `θ_1` cancels against the prefactor, leaving
///
/// ```text
/// Π_{n≥1} (1-q^n)^{-(k-2)} (1-ζq^n)^{-1} (1-ζ^{-1}q^n)^{-1}
/// ```
///
/// which is expanded factor by factor. No false theta function or
/// pentagonal series is involved, so this serves as an independent check
/// on [`crate::series::CoefficientTable`].
pub fn full_expansion_oracle(k: i64, nmax: usize, exec: Exec) -> Result<Vec<LaurentPoly>> {
    if k < 1 {
        return Err(Error::invalid("k", format!("must be >= 1, got {k}")));
    }
    if nmax > ORACLE_NMAX_CAP {
        return Err(Error::invalid(
            "nmax",
            format!("oracle is capped at {ORACLE_NMAX_CAP}, got {nmax}"),
        ));
    }
    let width = 2 * nmax + 1;
    let center = nmax;
    let mut rows = vec![vec![BigInt::zero(); width]; nmax + 1];
    rows[0][center] = BigInt::one();

    // ζ-dependent factors: dividing by (1 - ζ^{±1} q^n) is the recurrence
    // row[N] += shift_{±1}(row[N - n]) for ascending N.
    for n in 1..=nmax {
        for shift in [1isize, -1] {
            for big in n..=nmax {
                let (lo, hi) = rows.split_at_mut(big);
                let src = &lo[big - n];
                let dst = &mut hi[0];
                for (i, d) in dst.iter_mut().enumerate() {
                    let j = i as isize - shift;
                    if (0..width as isize).contains(&j) {
                        let s = &src[j as usize];
                        if !s.is_zero() {
                            *d += s;
                        }
                    }
                }
            }
        }
    }

    // (1 - q^n)^{-(k-2)} acts on each ζ-column independently.
    let mut columns: Vec<Vec<BigInt>> = (0..width)
        .map(|i| rows.iter().map(|r| r[i].clone()).collect())
        .collect();
    drop(rows);
    let power = k - 2;
    exec.for_each_mut(&mut columns, |_, col| {
        for n in 1..=nmax {
            if power >= 0 {
                for _ in 0..power {
                    for big in n..=nmax {
                        let s = col[big - n].clone();
                        col[big] += s;
                    }
                }
            } else {
                for _ in 0..-power {
                    for big in (n..=nmax).rev() {
                        let s = col[big - n].clone();
                        col[big] -= s;
                    }
                }
            }
        }
    });

    Ok((0..=nmax)
        .map(|big| {
            let mut row = LaurentPoly::zero();
            for (i, col) in columns.iter().enumerate() {
                row.set(i as i64 - center as i64, col[big].clone());
            }
            row
        })
        .collect())
}
