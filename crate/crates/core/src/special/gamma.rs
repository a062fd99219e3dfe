use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(πx)` with exact zeros at integers and reduced argument.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    (PI * r).sin()
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return PI.ln() - sin_pi(x).ln() - ln_gamma_positive(1.0 - x);
    }
    let x = x - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + series.ln()
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub(crate) fn log_abs_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((ln_gamma_positive(x), 1.0));
    }
    let s = sin_pi(x);
    if s == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("Γ has a pole at {x}")));
    }
    Ok((
        PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x),
        s.signum(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_points() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-15);
        assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-14);
        assert!((log_gamma(6.0).unwrap() - 120f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn matches_reference_implementation() {
        for &x in &[
            1e-8, 0.01, 0.3, 0.75, 1.5, 3.25, 9.5, 21.5, 47.0, 170.3, 1e3, 1e5,
        ] {
            let ours = log_gamma(x).unwrap();
            let reference = statrs::function::gamma::ln_gamma(x);
            let tol = 1e-12 * reference.abs().max(1e-3);
            assert!(
                (ours - reference).abs() <= tol,
                "x={x}: {ours} vs {reference}"
            );
        }
    }

    #[test]
    fn factorials_to_twenty() {
        let mut fact = 1f64;
        for n in 1..=20u32 {
            fact *= n as f64;
            let lg = log_gamma(n as f64 + 1.0).unwrap();
            assert!(
                (lg - fact.ln()).abs() <= 1e-12 * fact.ln().max(1.0),
                "n={n}"
            );
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn signed_gamma_negative_arguments() {
        // Γ(-1/2) = -2√π, Γ(-3/2) = 4√π/3
        let (l, s) = log_abs_gamma_signed(-0.5).unwrap();
        assert_eq!(s, -1.0);
        assert!((l - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        let (l, s) = log_abs_gamma_signed(-1.5).unwrap();
        assert_eq!(s, 1.0);
        assert!((l - (4.0 * PI.sqrt() / 3.0).ln()).abs() < 1e-14);
        assert!(log_abs_gamma_signed(-3.0).is_err());
    }
}
