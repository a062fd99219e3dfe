//! Special functions in log space.

mod bessel;
mod gamma;
mod logreal;

pub use bessel::{bessel_i, bessel_i_asymptotic, bessel_i_series, SERIES_ASYMPTOTIC_CROSSOVER};
pub use gamma::log_gamma;
pub use logreal::LogReal;
