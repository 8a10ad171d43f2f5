//! Bessel functions of the first kind for real order `nu >= 0` and real
//! argument `x >= 0`.
//!
//! Two evaluation routes are used:
//!
//! * the ascending power series when `x^2/4 < nu + 1`, where the terms
//!   decrease from the first one and the sum suffers no cancellation;
//! * Miller's backward recurrence otherwise, started well above
//!   `max(nu, x)` and normalized with the Neumann series
//!   `(x/2)^a = sum_k (a + 2k) Gamma(a + k) / k! J_{a+2k}(x)`, where `a` is
//!   the fractional part of `nu`.
//!
//! Both routes return `J_nu` and `J_{nu+1}` together, which is what the
//! derivative and the zero finder need.

use super::gamma::gamma;
use crate::error::{Error, Result};

/// Order of a Bessel function; always nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(Error::domain("Bessel order", nu))
        }
    }

    /// `|nu|`, the order of the solution regular at the origin.
    pub fn from_signed(nu: f64) -> Result<Self> {
        Self::new(nu.abs())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain("x", x));
    }
    let (j, _) = pair(nu.0, x)?;
    Ok(j)
}

/// `dJ_nu/dx = (J_{nu-1} - J_{nu+1}) / 2`. For `nu < 1` the equivalent
/// `(nu/x) J_nu - J_{nu+1}` is used so that no negative order is needed.
pub fn bessel_j_prime(nu: BesselOrder, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("x", x));
    }
    let nu = nu.0;
    if nu >= 1.0 {
        let (j_minus, _) = pair(nu - 1.0, x)?;
        let (_, j_plus) = pair(nu, x)?;
        Ok(0.5 * (j_minus - j_plus))
    } else {
        let (j, j_plus) = pair(nu, x)?;
        Ok(nu / x * j - j_plus)
    }
}

/// The Neumann function is singular at the origin and never enters the
/// regular radial solution, so it is deliberately absent.
pub fn bessel_y(_nu: BesselOrder, _x: f64) -> Result<f64> {
    Err(Error::NotImplemented(
        "Neumann function: the regular radial solution excludes it",
    ))
}

/// `(J_nu(x), J_{nu+1}(x))` for `nu >= 0`, `x >= 0`.
pub(crate) fn pair(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Ok((if nu == 0.0 { 1.0 } else { 0.0 }, 0.0));
    }
    let (j0, j1) = if 0.25 * x * x < nu + 1.0 {
        (series(nu, x), series(nu + 1.0, x))
    } else {
        miller(nu, x)
    };
    if j0.is_finite() && j1.is_finite() {
        Ok((j0, j1))
    } else {
        Err(Error::Evaluation(format!(
            "non-finite J at nu = {nu}, x = {x}"
        )))
    }
}

pub(crate) fn series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let k = k as f64;
        term *= -q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    let prefactor = if nu == 0.0 {
        1.0
    } else {
        (0.5 * x).powf(nu) / gamma(nu + 1.0)
    };
    prefactor * sum
}

pub(crate) fn miller(nu: f64, x: f64) -> (f64, f64) {
    let whole = nu.floor();
    let alpha = nu - whole;
    let whole = whole as usize;

    let m = (nu + 1.0).max(x);
    let start = m + 25.0 + 10.0 * m.cbrt();
    let mut top = ((start - alpha).ceil() as usize).max(whole + 2);
    if top % 2 == 1 {
        top += 1;
    }

    // Neumann-series weights: w_0 = Gamma(a+1), w_k = (a+2k) Gamma(a+k)/k!
    let half = top / 2;
    let mut weights = Vec::with_capacity(half + 1);
    let gamma_a1 = gamma(alpha + 1.0);
    weights.push(gamma_a1);
    let mut c = gamma_a1;
    for k in 1..=half {
        if k > 1 {
            c *= (alpha + k as f64 - 1.0) / k as f64;
        }
        weights.push((alpha + 2.0 * k as f64) * c);
    }

    let mut f_above = 0.0;
    let mut f = 1.0;
    let mut sum = weights[half] * f;
    let mut at_nu = 0.0;
    let mut at_nu1 = 0.0;

    for j in (1..=top).rev() {
        let below = 2.0 * (alpha + j as f64) / x * f - f_above;
        f_above = f;
        f = below;
        let idx = j - 1;
        if idx == whole + 1 {
            at_nu1 = f;
        } else if idx == whole {
            at_nu = f;
        }
        if idx % 2 == 0 {
            sum += weights[idx / 2] * f;
        }
        if f.abs() > RESCALE_ABOVE {
            f *= RESCALE_BY;
            f_above *= RESCALE_BY;
            sum *= RESCALE_BY;
            at_nu *= RESCALE_BY;
            at_nu1 *= RESCALE_BY;
        }
    }

    let norm = (0.5 * x).powf(alpha) / sum;
    (at_nu * norm, at_nu1 * norm)
}
