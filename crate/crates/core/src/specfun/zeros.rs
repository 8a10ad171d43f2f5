//! Positive zeros `j_{nu,n}` of `J_nu`.
//!
//! Zeros are located in order by stepping outward from `x = nu` (there are
//! none in `(0, nu]`) with a step shorter than the smallest gap between
//! consecutive zeros, so every bracket holds exactly one zero and the index
//! is never skipped. Each bracket is then refined by Newton's method started
//! from McMahon's estimate, falling back to bisection whenever a step leaves
//! the bracket.

use std::f64::consts::PI;

use super::bessel::{pair, BesselOrder};
use crate::error::{Error, Result};

/// Consecutive zeros of `J_nu`, `nu >= 0`, are always more than 3.11 apart.
const SCAN_STEP: f64 = 1.0;
const MIN_GAP: f64 = 3.0;
const MAX_NEWTON: usize = 100;

/// McMahon's large-`n` expansion of `j_{nu,n}`.
pub fn mcmahon_zero(nu: f64, n: usize) -> f64 {
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

/// The `n`-th positive zero, `n >= 1`.
pub fn bessel_zero(nu: BesselOrder, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "Bessel zeros are indexed from 1".into(),
        ));
    }
    let mut zeros = BesselZeros::new(nu);
    for _ in 1..n {
        zeros.next_zero()?;
    }
    zeros.next_zero()
}

/// The first `count` positive zeros in increasing order.
pub fn bessel_zeros(nu: BesselOrder, count: usize) -> Result<Vec<f64>> {
    let mut zeros = BesselZeros::new(nu);
    (0..count).map(|_| zeros.next_zero()).collect()
}

/// Walks the zeros of `J_nu` in increasing order.
#[derive(Debug, Clone)]
pub struct BesselZeros {
    nu: f64,
    found: usize,
    x: f64,
    fx: f64,
}

impl BesselZeros {
    pub fn new(nu: BesselOrder) -> Self {
        let nu = nu.value();
        // J_nu > 0 on (0, nu]; J_0(0) = 1.
        let x = nu;
        let fx = if nu == 0.0 { 1.0 } else { f64::NAN };
        Self {
            nu,
            found: 0,
            x,
            fx,
        }
    }

    fn value(&self, x: f64) -> Result<f64> {
        Ok(pair(self.nu, x)?.0)
    }

    pub fn next_zero(&mut self) -> Result<f64> {
        if self.fx.is_nan() {
            self.fx = self.value(self.x)?;
        }
        let index = self.found + 1;
        loop {
            let b = self.x + SCAN_STEP;
            let fb = self.value(b)?;
            if fb == 0.0 {
                return Ok(self.accept(b));
            }
            if (fb < 0.0) != (self.fx < 0.0) {
                let root = refine(self.nu, index, self.x, self.fx, b, fb)?;
                return Ok(self.accept(root));
            }
            self.x = b;
            self.fx = fb;
        }
    }

    fn accept(&mut self, root: f64) -> f64 {
        self.found += 1;
        self.x = root + MIN_GAP;
        self.fx = f64::NAN;
        root
    }
}

impl Iterator for BesselZeros {
    type Item = Result<f64>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_zero())
    }
}

fn refine(nu: f64, index: usize, mut a: f64, mut fa: f64, mut b: f64, _fb: f64) -> Result<f64> {
    let guess = mcmahon_zero(nu, index);
    let mut x = if guess > a && guess < b {
        guess
    } else {
        0.5 * (a + b)
    };
    for _ in 0..MAX_NEWTON {
        let (j, j_next) = pair(nu, x)?;
        if j == 0.0 {
            return Ok(x);
        }
        if (j < 0.0) == (fa < 0.0) {
            a = x;
            fa = j;
        } else {
            b = x;
        }
        let slope = nu / x * j - j_next;
        let mut next = x - j / slope;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x || b - a <= 4.0 * f64::EPSILON * b {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Evaluation(format!(
        "zero {index} of J_{nu} did not converge in [{a}, {b}]"
    )))
}
