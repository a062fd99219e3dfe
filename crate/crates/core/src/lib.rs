//! Exact and asymptotic coefficients of the inverse theta quotients
//!
//! ```text
//! q^{k/24} (ζ^{1/2} - ζ^{-1/2}) h_k(w;τ) = Σ a_{m,k}(n) ζ^m q^n,
//! h_k(w;τ) = i / (θ_1(w;τ) η(τ)^{k-3}).
//! ```
//!
//! The crate computes `a_{m,k}(n)` and `b_{m,k}(n) = a_{m,k}(n) - a_{m+1,k}(n)`
//! exactly ([`series`], [`laurent`]), the Taylor data `d_{m,k}(ℓ)` that drive
//! their asymptotics ([`rational`]), the log-scaled `I`-Bessel functions the
//! asymptotic formulas are built from ([`special`]), and the formulas
//! themselves together with exact-vs-asymptotic comparisons ([`asymptotics`]).
//!
//! Data-parallel loops run on rayon when the default `parallel` feature is
//! on; see [`Exec`].

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod euler_maclaurin;
pub mod exec;
pub mod laurent;
pub mod rational;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use exec::Exec;
pub use laurent::LaurentPoly;
pub use series::{CoefficientTable, IntSeries};
pub use special::LogReal;
