//! Asymptotic Euler–Maclaurin evaluation of shifted lattice sums
//!
//! ```text
//! Σ_{m≥0} f((m+a) t) ≈ (1/t) ∫_0^∞ f(x) dx - Σ_{n=0}^{N} f^{(n)}(0)/n! · B_{n+1}(a)/(n+1) · t^n
//! ```
//!
//! for `f` of rapid decay and `t → 0` with `Re t > 0`; the error is `O(t^{N+1})`.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::rational::{bernoulli_polynomial, rat_int, rat_to_f64, Rat};

fn check(derivs: &[f64], a: f64, order: usize, t: Complex64) -> Result<Rat> {
    if t.re.is_nan() || t.re <= 0.0 {
        return Err(Error::invalid("t", format!("needs Re(t) > 0, got {t}")));
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::invalid("a", format!("needs a > 0, got {a}")));
    }
    if derivs.len() < order + 1 {
        return Err(Error::invalid(
            "derivs",
            format!(
                "order {order} needs {} derivatives, got {}",
                order + 1,
                derivs.len()
            ),
        ));
    }
    Ok(BigRational::from_float(a).expect("finite"))
}

/// `Σ_{n=0}^{N} f^{(n)}(0)/n! · B_{n+1}(a)/(n+1) · t^n`, the part of the
/// approximant that does not involve the integral.
///
/// `a` enters exactly: the `f64` is a dyadic rational, and `B_{n+1}(a)/(n+1)!`
/// is evaluated in rational arithmetic before rounding.
pub fn euler_maclaurin_correction(
    derivs: &[f64],
    a: f64,
    order: usize,
    t: Complex64,
) -> Result<Complex64> {
    let a = check(derivs, a, order, t)?;
    let mut factorial = Rat::from_integer(1.into());
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, &deriv) in derivs.iter().enumerate().take(order + 1) {
        if n > 0 {
            factorial *= rat_int(n as i64);
            power *= t;
        }
        if deriv == 0.0 {
            continue;
        }
        let weight = bernoulli_polynomial(n + 1).eval(&a) / (&factorial * rat_int(n as i64 + 1));
        sum += power * (deriv * rat_to_f64(&weight));
    }
    Ok(sum)
}

/// The full approximant `(1/t) ∫f - correction`.
pub fn euler_maclaurin_asymptotic(
    derivs: &[f64],
    integral: f64,
    a: f64,
    order: usize,
    t: Complex64,
) -> Result<Complex64> {
    let correction = euler_maclaurin_correction(derivs, a, order, t)?;
    Ok(Complex64::new(integral, 0.0) / t - correction)
}
