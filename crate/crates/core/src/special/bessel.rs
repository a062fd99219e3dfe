//! Modified Bessel function `I_ν(x)` of real order, returned in log space.
//!
//! Dispatch:
//! - negative integer orders reflect to `I_{|ν|}`;
//! - half-integer orders use the closed forms for `I_{±1/2}` together with
//!   three-term recurrences run in their stable directions (Miller's
//!   backward recurrence for `I`, forward recurrence for `K`), and
//!   `I_{-μ} = I_μ + (2/π) sin(μπ) K_μ` for negative orders;
//! - any other order uses the ascending series for `x ≤ 30` and the
//!   large-argument expansion beyond, falling back to the series when the
//!   expansion cannot reach double precision.

use std::f64::consts::{FRAC_2_PI, LN_2, PI};

use super::gamma::log_abs_gamma_signed;
use super::logreal::LogReal;
use crate::error::{Error, Result};

/// Argument above which general orders switch to the asymptotic expansion.
pub const SERIES_ASYMPTOTIC_CROSSOVER: f64 = 30.0;

const RESCALE: f64 = 1e250;
const MAX_SERIES_TERMS: usize = 2_000_000;
/// Largest acceptable smallest-term size (relative) for the asymptotic path.
const ASYMPTOTIC_TOL: f64 = 1e-16;

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel order must be finite, got {nu}"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "Bessel argument must be >= 0, got {x}"
        )));
    }
    Ok(())
}

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

/// `Some(2ν)` when `ν` is a half-odd-integer of moderate size.
fn twice_half_integer(nu: f64) -> Option<i64> {
    let twice = 2.0 * nu;
    if is_integer(twice) && !is_integer(nu) && twice.abs() < 1e7 {
        Some(twice as i64)
    } else {
        None
    }
}

/// Values at `x = 0`, or `None` when `x > 0`.
fn at_origin(nu: f64, x: f64) -> Option<Result<LogReal>> {
    if x > 0.0 {
        return None;
    }
    Some(if nu == 0.0 {
        Ok(LogReal::ONE)
    } else if nu > 0.0 || is_integer(nu) {
        Ok(LogReal::ZERO)
    } else {
        Err(Error::Domain(format!("I_{nu}(0) is a pole")))
    })
}

/// `I_ν(x)` for real `ν` and `x ≥ 0`.
pub fn bessel_i(nu: f64, x: f64) -> Result<LogReal> {
    check_args(nu, x)?;
    let nu = if nu < 0.0 && is_integer(nu) { -nu } else { nu };
    if let Some(v) = at_origin(nu, x) {
        return v;
    }
    if let Some(twice) = twice_half_integer(nu) {
        return Ok(half_integer(twice, x));
    }
    if x <= SERIES_ASYMPTOTIC_CROSSOVER {
        return bessel_i_series(nu, x);
    }
    bessel_i_asymptotic(nu, x).or_else(|_| bessel_i_series(nu, x))
}

/// Ascending series `Σ_j (x/2)^{2j+ν} / (j! Γ(j+ν+1))`, summed with
/// rescaling so that any argument stays in range.
pub fn bessel_i_series(nu: f64, x: f64) -> Result<LogReal> {
    check_args(nu, x)?;
    let nu = if nu < 0.0 && is_integer(nu) { -nu } else { nu };
    if let Some(v) = at_origin(nu, x) {
        return v;
    }
    let half = 0.5 * x;
    let (lg, gamma_sign) = log_abs_gamma_signed(nu + 1.0)?;
    let mut log_scale = nu * half.ln() - lg;
    let quarter_sq = half * half;
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    for j in 0..MAX_SERIES_TERMS {
        sum += term;
        let denom = (j as f64 + 1.0) * (j as f64 + nu + 1.0);
        let ratio = quarter_sq / denom;
        term *= ratio;
        if denom > 0.0 && ratio < 1.0 && term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        if sum.abs() > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    if sum == 0.0 {
        return Ok(LogReal::ZERO);
    }
    Ok(LogReal::from_parts(
        (gamma_sign * sum.signum()) as i8,
        log_scale + sum.abs().ln(),
    ))
}

/// Large-argument expansion
/// `I_ν(x) ≈ e^x/√(2πx) Σ_j (-1)^j a_j(ν)/x^j`,
/// `a_j(ν) = Π_{i=1}^{j} (4ν² - (2i-1)²) / (8^j j!)`, truncated at the
/// smallest term. Fails when that term exceeds double precision.
pub fn bessel_i_asymptotic(nu: f64, x: f64) -> Result<LogReal> {
    check_args(nu, x)?;
    if x == 0.0 {
        return Err(Error::Domain("asymptotic expansion needs x > 0".into()));
    }
    let four_nu_sq = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut converged = false;
    for j in 1..10_000usize {
        let odd = (2 * j - 1) as f64;
        let next = -term * (four_nu_sq - odd * odd) / (8.0 * j as f64 * x);
        if next == 0.0 || next.abs() <= 1e-17 * sum.abs() {
            sum += next;
            converged = true;
            break;
        }
        if next.abs() > term.abs() {
            converged = term.abs() <= ASYMPTOTIC_TOL * sum.abs();
            break;
        }
        sum += next;
        term = next;
    }
    if !converged {
        return Err(Error::Domain(format!(
            "asymptotic expansion of I_{nu}({x}) does not reach double precision"
        )));
    }
    let lead = x - 0.5 * (2.0 * PI * x).ln();
    Ok(LogReal::from_parts(
        sum.signum() as i8,
        lead + sum.abs().ln(),
    ))
}

/// `ln sinh x` for `x > 0`.
fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln() - LN_2
}

/// `ln cosh x`.
fn ln_cosh(x: f64) -> f64 {
    x + (-2.0 * x).exp().ln_1p() - LN_2
}

/// `I_{n+1/2}(x)` by Miller's backward recurrence
/// `I_{ν-1} = I_{ν+1} + (2ν/x) I_ν`, normalised by the closed form of `I_{1/2}`.
fn half_integer_i_positive(n: u64, x: f64) -> LogReal {
    let ln_prefactor = 0.5 * (2.0 / (PI * x)).ln();
    let ln_i_half = ln_prefactor + ln_sinh(x);
    if n == 0 {
        return LogReal::exp(ln_i_half);
    }
    let top = n + 32 + (100.0 * x).sqrt().ceil() as u64;
    let mut upper = 0.0f64; // order j + 3/2
    let mut cur = 1.0f64; // order j + 1/2
    let mut log_scale = 0.0f64;
    let mut ln_at_n = 0.0f64;
    for j in (1..=top).rev() {
        let nu = j as f64 + 0.5;
        let lower = upper + (2.0 * nu / x) * cur;
        upper = cur;
        cur = lower;
        if j - 1 == n {
            ln_at_n = cur.ln() + log_scale;
        }
        if cur > RESCALE {
            cur /= RESCALE;
            upper /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    let ln_at_half = cur.ln() + log_scale;
    LogReal::exp(ln_i_half + ln_at_n - ln_at_half)
}

/// `K_{n+1/2}(x)` by forward recurrence `K_{ν+1} = K_{ν-1} + (2ν/x) K_ν`
/// from `K_{±1/2}(x) = √(π/(2x)) e^{-x}`.
fn half_integer_k(n: u64, x: f64) -> LogReal {
    let ln_k_half = 0.5 * (PI / (2.0 * x)).ln() - x;
    let mut prev = 1.0f64; // order j - 1/2
    let mut cur = 1.0f64; // order j + 1/2
    let mut log_scale = 0.0f64;
    for j in 0..n {
        let nu = j as f64 + 0.5;
        let next = prev + (2.0 * nu / x) * cur;
        prev = cur;
        cur = next;
        if cur > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    LogReal::exp(ln_k_half + log_scale + cur.ln())
}

fn half_integer(twice_nu: i64, x: f64) -> LogReal {
    let n = (twice_nu.unsigned_abs() - 1) / 2;
    if twice_nu > 0 {
        return half_integer_i_positive(n, x);
    }
    if n == 0 {
        return LogReal::exp(0.5 * (2.0 / (PI * x)).ln() + ln_cosh(x));
    }
    // sin((n + 1/2)π) = (-1)^n
    let k_part = half_integer_k(n, x) * LogReal::from_f64(FRAC_2_PI);
    let k_part = if n.is_multiple_of(2) { k_part } else { -k_part };
    half_integer_i_positive(n, x) + k_part
}
