//! Bessel functions of the first kind and their zeros, written from scratch.

mod bessel;
mod gamma;
mod zeros;

pub use bessel::{bessel_j, bessel_j_prime, bessel_y, BesselOrder};
pub use gamma::{gamma, ln_gamma};
pub use zeros::{bessel_zero, bessel_zeros, mcmahon_zero, BesselZeros};
