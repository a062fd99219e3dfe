//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use statrs::function::gamma::gamma;

use theta_asym::rational::{rat_to_f64, Rat};

/// Double-double: an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`,
/// giving about 32 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };
    pub const PI: DD = DD {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN_2: DD = DD {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub fn new(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DD { hi, lo }
    }

    /// Nearest double-double to an exact rational.
    pub fn from_rat(r: &Rat) -> Self {
        let hi = rat_to_f64(r);
        let rest = r - Rat::from_float(hi).expect("finite");
        DD::norm(hi, rat_to_f64(&rest))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn scale2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DD {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DD::ZERO;
        }
        let y = DD::new(self.hi.sqrt());
        y + (self - y * y) / (y + y)
    }

    pub fn exp(self) -> Self {
        if self.hi < -745.0 {
            return DD::ZERO;
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = (self - DD::LN_2 * DD::new(k)).scale2(-10);
        // Taylor series on |r| < 2^-10 · ln2/2
        let mut term = DD::ONE;
        let mut sum = DD::ONE;
        for i in 1..20 {
            term = term * r / DD::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.scale2(k as i32)
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = DD::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        DD::norm(s, e + f)
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        DD::norm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b * DD::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DD::new(q2);
        let q3 = r.hi / b.hi;
        DD::norm(q1, q2) + DD::new(q3)
    }
}

/// `Σ_{m≥0} e^{-2((m+a)t)²}` summed in double-double until terms vanish.
/// `a` and `t` are taken as the exact binary values they hold.
pub fn gaussian_lattice_sum(a: f64, t: f64) -> DD {
    let mut sum = DD::ZERO;
    let mut m = 0u64;
    loop {
        let x = (DD::new(m as f64) + DD::new(a)) * DD::new(t);
        let term = (DD::new(-2.0) * x * x).exp();
        sum = sum + term;
        if term.hi < 1e-40 {
            return sum;
        }
        m += 1;
    }
}

/// `∫_0^∞ e^{-2x²} dx = √(π/8)`.
pub fn gaussian_integral() -> DD {
    (DD::PI / DD::new(8.0)).sqrt()
}

/// `f^{(n)}(0)` for `f(x) = e^{-2x²}`, `n = 0..count`.
pub fn gaussian_derivs(count: usize) -> Vec<f64> {
    (0..count)
        .map(|n| {
            if n % 2 == 1 {
                return 0.0;
            }
            let j = (n / 2) as i32;
            // (2j)! (-2)^j / j!
            let mut v = (-2f64).powi(j);
            for i in (j as usize + 1)..=n {
                v *= i as f64;
            }
            v
        })
        .collect()
}

/// `e^{-kz/24} ϑ_m(e^{-z})` with
/// `ϑ_m(q) = (1 + q^{|m|}) Σ_{n≥0} (-1)^n q^{n(n+1)/2 + n|m|} - 1`,
/// summed directly in double-double.
pub fn weighted_false_theta(m: i64, k: i64, z: f64) -> DD {
    let m = m.unsigned_abs() as f64;
    let zd = DD::new(z);
    let mut sum = DD::ZERO;
    let mut n = 0u64;
    loop {
        let nf = n as f64;
        let e = nf * (nf + 1.0) / 2.0 + nf * m;
        let a = (-(zd * DD::new(e))).exp();
        let b = (-(zd * DD::new(e + m))).exp();
        let term = a + b;
        sum = if n.is_multiple_of(2) {
            sum + term
        } else {
            sum - term
        };
        if term.hi < 1e-40 {
            break;
        }
        n += 1;
    }
    let weight = (-(DD::new(k as f64) * zd / DD::new(24.0))).exp();
    weight * (sum - DD::ONE)
}

/// `I_ν(x)` from its ascending series with `Γ` from statrs; intended for
/// moderate `x` and `|ν|`, where every term fits in an `f64`.
pub fn bessel_i_reference(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut sum = 0.0;
    let mut fact = 1.0;
    for j in 0..400 {
        if j > 0 {
            fact *= j as f64;
        }
        let arg = j as f64 + nu + 1.0;
        if arg <= 0.0 && arg.fract() == 0.0 {
            continue; // 1/Γ vanishes at the poles
        }
        let term = half.powf(2.0 * j as f64 + nu) / (fact * gamma(arg));
        sum += term;
        if j as f64 > half && term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `√(π/(2x)) e^{-x} Σ_{j=0}^{n} (n+j)! / (j! (n-j)! (2x)^j)`, returned as
/// the natural log of the magnitude (the value is positive).
pub fn ln_bessel_k_half_integer(n: u32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // (n+j)!/(j!(n-j)!)
    for j in 0..=n {
        if j > 0 {
            let j = j as f64;
            let nf = n as f64;
            coeff *= (nf + j) * (nf - j + 1.0) / j;
        }
        sum += coeff / (2.0 * x).powi(j as i32);
    }
    0.5 * (std::f64::consts::PI / (2.0 * x)).ln() - x + sum.ln()
}

/// `p_k(n)` for `n ≤ nmax` from `n p(n) = k Σ_{j=1}^{n} σ(j) p(n-j)`.
pub fn colored_partitions_by_divisor_sums(k: i64, nmax: usize) -> Vec<BigInt> {
    let sigma: Vec<i64> = (0..=nmax)
        .map(|j| (1..=j).filter(|d| j % d == 0).map(|d| d as i64).sum())
        .collect();
    let mut p = vec![BigInt::zero(); nmax + 1];
    p[0] = BigInt::from(1);
    for n in 1..=nmax {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            acc += &p[n - j] * sigma[j];
        }
        acc *= k;
        p[n] = acc / BigInt::from(n);
    }
    p
}

pub fn relative(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}
