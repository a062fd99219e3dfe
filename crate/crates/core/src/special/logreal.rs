use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use serde::Serialize;

/// A signed real stored as `sign · e^{logmag}`.
///
/// Covers magnitudes far outside the `f64` range (`e^{±10^6}` and beyond).
/// Products and quotients are exact in log space; sums go through a signed
/// log-sum-exp.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogReal {
    sign: i8,
    logmag: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };
    pub const ONE: LogReal = LogReal {
        sign: 1,
        logmag: 0.0,
    };

    /// `sign · e^{logmag}`; a zero sign yields [`LogReal::ZERO`].
    pub fn from_parts(sign: i8, logmag: f64) -> Self {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal {
                sign: sign.signum(),
                logmag,
            }
        }
    }

    /// `e^x`.
    pub fn exp(x: f64) -> Self {
        Self::from_parts(1, x)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::from_parts(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    /// Converts an integer of any size, keeping the top 64 bits of mantissa.
    pub fn from_bigint(n: &BigInt) -> Self {
        let (sign, mag) = n.to_u64_digits();
        let sign = match sign {
            Sign::Minus => -1,
            Sign::NoSign => return Self::ZERO,
            Sign::Plus => 1,
        };
        let bits = n.bits();
        let logmag = if bits <= 64 {
            (mag[0] as f64).ln()
        } else {
            let shift = bits - 64;
            let top: BigInt = n.magnitude().clone().into();
            let top = (top >> shift).to_u64_digits().1[0];
            // top lies in [2^63, 2^64)
            (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
        };
        LogReal { sign, logmag }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn logmag(self) -> f64 {
        self.logmag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Nearest `f64`, saturating to `±inf` or `0`.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.logmag.exp()
        }
    }

    pub fn abs(self) -> Self {
        Self::from_parts(self.sign.abs(), self.logmag)
    }

    /// `|self|^p` for nonzero `self`; zero stays zero for `p > 0`.
    pub fn powf_abs(self, p: f64) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        Self::exp(self.logmag * p)
    }

    /// `|self - reference| / |reference|`, evaluated without leaving log space.
    pub fn rel_diff(self, reference: LogReal) -> f64 {
        if reference.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        if self.is_zero() {
            return 1.0;
        }
        let d = self.logmag - reference.logmag;
        if self.sign == reference.sign {
            d.exp_m1().abs()
        } else {
            1.0 + d.exp()
        }
    }

    pub fn cmp_abs(self, other: LogReal) -> Ordering {
        self.logmag
            .partial_cmp(&other.logmag)
            .unwrap_or(Ordering::Equal)
    }
}

impl Default for LogReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}exp({})", if s < 0 { "-" } else { "" }, self.logmag),
        }
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal {
            sign: -self.sign,
            logmag: self.logmag,
        }
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        Self::from_parts(self.sign * rhs.sign, self.logmag + rhs.logmag)
    }
}

impl Div for LogReal {
    type Output = LogReal;
    /// Division by zero yields `sign · inf`, mirroring `f64`.
    fn div(self, rhs: LogReal) -> LogReal {
        if rhs.is_zero() {
            return Self::from_parts(self.sign, f64::INFINITY);
        }
        Self::from_parts(self.sign * rhs.sign, self.logmag - rhs.logmag)
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.logmag >= rhs.logmag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if big.logmag.is_infinite() {
            return big;
        }
        let d = small.logmag - big.logmag;
        if big.sign == small.sign {
            LogReal {
                sign: big.sign,
                logmag: big.logmag + d.exp().ln_1p(),
            }
        } else if d == 0.0 {
            Self::ZERO
        } else {
            LogReal {
                sign: big.sign,
                logmag: big.logmag + (-d.exp_m1()).ln(),
            }
        }
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl std::iter::Sum for LogReal {
    fn sum<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        iter.fold(LogReal::ZERO, |a, b| a + b)
    }
}
