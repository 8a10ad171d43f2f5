//! Finite-difference eigensolver for the hard-wall radial problem.
//!
//! With `u = sqrt(rho) R` the radial Bessel equation becomes the
//! self-adjoint problem
//!
//! ```text
//! -u'' + (nu^2 - 1/4) / rho^2 u = eta^2 u,   u(0) = u(rho0) = 0
//! ```
//!
//! which is discretized on the uniform interior nodes `rho_i = i h`,
//! `h = rho0 / (points + 1)`, as a symmetric tridiagonal matrix with
//! off-diagonal `-1/h^2`. The potential at node `i` is the value for which the
//! small-`rho` behaviour `rho^(nu + 1/2)` is annihilated exactly by the
//! three-point stencil:
//!
//! ```text
//! h^2 q_i = (1 + 1/i)^p - 2 + (1 - 1/i)^p,   p = nu + 1/2
//! ```
//!
//! It equals `(nu^2 - 1/4) / rho_i^2` up to `O(h^2 / rho_i^4)`, vanishes
//! identically for `nu = 1/2`, and keeps second-order convergence at the
//! critical `nu = 0` where the plain `-1/(4 rho^2)` sample does not converge.
//!
//! Eigenvalues come from bisection on the Sturm count. The count is run on the
//! deviations of the LDL^T pivots from those of the bare second difference,
//! `(i + 1) / i`, so `2/h^2 - lambda` is never formed and the eigenvalues keep
//! close to full relative precision even at `h ~ 1e-4`.
//!
//! Nothing here calls into [`crate::specfun`].

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 128;

/// Finest interior-point resolution used by [`eigenvalue_extrapolated`].
pub const DEFAULT_FINEST_INTERVALS: usize = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    grid_step: f64,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    nu: f64,
    rho0: f64,
    /// `h^2 q_i`, kept separately because `diag` has lost its low bits.
    scaled_potential: Vec<f64>,
}

impl DiscreteOperator {
    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.dimension()).map(move |i| i as f64 * self.grid_step)
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let shift = self.grid_step * self.grid_step * lambda;
        let mut count = 0;
        let mut delta = 0.0;
        let mut pivot = 1.0;
        for (idx, hq) in self.scaled_potential.iter().enumerate() {
            let i = (idx + 1) as f64;
            let s = hq - shift;
            delta = if idx == 0 {
                s
            } else {
                s + delta * (i - 1.0) / (i * pivot)
            };
            pivot = (i + 1.0) / i + delta;
            if pivot == 0.0 {
                pivot = -1e-290;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval holding the whole spectrum.
    fn spectrum_bounds(&self) -> (f64, f64) {
        let h2 = self.grid_step * self.grid_step;
        let n = self.dimension();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (i, hq) in self.scaled_potential.iter().enumerate() {
            let radius = if i == 0 || i + 1 == n { 1.0 } else { 2.0 };
            lo = lo.min((2.0 + hq - radius) / h2);
            hi = hi.max((2.0 + hq + radius) / h2);
        }
        (lo, hi)
    }

    /// Eigenvector at `lambda` by shooting outward from the axis; the
    /// solution growing away from `rho = 0` is the stable direction. Returned
    /// values are `u_i` at the interior nodes, unit-normalized in `l2`.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let shift = self.grid_step * self.grid_step * lambda;
        let mut u = Vec::with_capacity(self.dimension());
        let (mut prev, mut cur) = (0.0, 1.0);
        u.push(cur);
        for hq in &self.scaled_potential[..self.dimension() - 1] {
            let next = (2.0 + (hq - shift)) * cur - prev;
            prev = cur;
            cur = next;
            u.push(cur);
            if cur.abs() > 1e200 {
                for v in u.iter_mut() {
                    *v *= 1e-200;
                }
                prev *= 1e-200;
                cur *= 1e-200;
            }
        }
        let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        u.iter_mut().for_each(|v| *v /= norm);
        u
    }
}

/// `h^2 q_i` for the stencil-exact potential; see the module docs.
fn scaled_potential(p: f64, i: usize) -> f64 {
    let fi = i as f64;
    if i < 16 {
        ((fi + 1.0).powf(p) - 2.0 * fi.powf(p) + (fi - 1.0).powf(p)) / fi.powf(p)
    } else {
        // 2 sum_k C(p, 2k) t^(2k); the direct form cancels badly here.
        let t2 = 1.0 / (fi * fi);
        let mut coeff = p * (p - 1.0) / 2.0;
        let mut power = t2;
        let mut sum = 0.0;
        for k in 1..40 {
            let term = coeff * power;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
            let k2 = 2.0 * k as f64;
            coeff *= (p - k2) * (p - k2 - 1.0) / ((k2 + 1.0) * (k2 + 2.0));
            power *= t2;
        }
        2.0 * sum
    }
}

pub fn discretize(nu: f64, rho0: f64, points: usize) -> Result<DiscreteOperator> {
    if points < MIN_POINTS {
        return Err(Error::Resolution(format!(
            "{points} interior points, at least {MIN_POINTS} required"
        )));
    }
    if !nu.is_finite() {
        return Err(Error::domain("nu", nu));
    }
    if !(rho0.is_finite() && rho0 > 0.0) {
        return Err(Error::domain("rho0", rho0));
    }
    let h = rho0 / (points + 1) as f64;
    let h2 = h * h;
    let p = nu.abs() + 0.5;
    let scaled: Vec<f64> = (1..=points).map(|i| scaled_potential(p, i)).collect();
    let diag = scaled.iter().map(|hq| (2.0 + hq) / h2).collect();
    Ok(DiscreteOperator {
        grid_step: h,
        diag,
        offdiag: vec![-1.0 / h2; points - 1],
        nu,
        rho0,
        scaled_potential: scaled,
    })
}

/// The `index`-th eigenvalue (1-based) by bisection, starting from `lo`.
fn bisect_eigenvalue(op: &DiscreteOperator, index: usize, mut lo: f64, mut hi: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return hi;
        }
        if op.count_below(mid) >= index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// The `count` smallest eigenvalues in increasing order, bisected down to
/// adjacent floating-point numbers.
pub fn lowest_eigenvalues(op: &DiscreteOperator, count: usize) -> Result<Vec<f64>> {
    if count > op.dimension() / 4 {
        return Err(Error::InvalidParameter(format!(
            "asked for {count} eigenvalues of a {}-point operator (at most a quarter)",
            op.dimension()
        )));
    }
    let (mut lo, hi) = op.spectrum_bounds();
    let mut out = Vec::with_capacity(count);
    for index in 1..=count {
        let value = bisect_eigenvalue(op, index, lo, hi);
        out.push(value);
        lo = value;
    }
    Ok(out)
}

/// Interior sign changes of the `index`-th eigenvector.
pub fn node_count(op: &DiscreteOperator, index: usize) -> Result<usize> {
    let lambda = *lowest_eigenvalues(op, index)?
        .last()
        .ok_or_else(|| Error::InvalidParameter("index must be at least 1".into()))?;
    Ok(sign_changes(&op.eigenvector(lambda)))
}

pub(crate) fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v < 0.0) != (last < 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Eigenvalue at three resolutions with Richardson extrapolation on the two
/// finest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    pub value: f64,
    pub coarse: f64,
    pub medium: f64,
    pub fine: f64,
    /// `log2((coarse - medium) / (medium - fine))`.
    pub order: f64,
    pub finest_intervals: usize,
}

pub const ORDER_TOLERATED: (f64, f64) = (1.5, 2.5);

/// Richardson-extrapolated `index`-th eigenvalue at the default resolution.
pub fn eigenvalue_extrapolated(nu: f64, rho0: f64, index: usize) -> Result<f64> {
    Ok(extrapolate_eigenvalue(nu, rho0, index, DEFAULT_FINEST_INTERVALS)?.value)
}

/// Runs the grid with `finest_intervals`, half and a quarter of that many
/// intervals (a power of two keeps the nodes nested).
pub fn extrapolate_eigenvalue(
    nu: f64,
    rho0: f64,
    index: usize,
    finest_intervals: usize,
) -> Result<Extrapolation> {
    Ok(extrapolate_many(nu, rho0, index, finest_intervals)?[index - 1])
}

/// [`extrapolate_eigenvalue`] for indices `1..=count` sharing the three grids.
pub fn extrapolate_many(
    nu: f64,
    rho0: f64,
    count: usize,
    finest_intervals: usize,
) -> Result<Vec<Extrapolation>> {
    if count == 0 {
        return Err(Error::InvalidParameter("index must be at least 1".into()));
    }
    if !finest_intervals.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "finest interval count {finest_intervals} must be divisible by 4"
        )));
    }
    let solve = |intervals: usize| -> Result<Vec<f64>> {
        lowest_eigenvalues(&discretize(nu, rho0, intervals - 1)?, count)
    };
    let coarse = solve(finest_intervals / 4)?;
    let medium = solve(finest_intervals / 2)?;
    let fine = solve(finest_intervals)?;

    (0..count)
        .map(|i| {
            let order = ((coarse[i] - medium[i]) / (medium[i] - fine[i])).log2();
            let (min, max) = ORDER_TOLERATED;
            if !(order >= min && order <= max) {
                return Err(Error::ConvergenceOrder { order, min, max });
            }
            Ok(Extrapolation {
                value: (4.0 * fine[i] - medium[i]) / 3.0,
                coarse: coarse[i],
                medium: medium[i],
                fine: fine[i],
                order,
                finest_intervals,
            })
        })
        .collect()
}
