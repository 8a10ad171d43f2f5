//! Energy levels of the spin-1/2 particle confined by the rotating-frame wall.
//!
//! For spin `s = +-1` along `z`, orbital number `l` and axial wavenumber `k`,
//! the radial function obeys Bessel's equation of order
//! `nu_s = l + (1 - s)/2 - zeta k`, and the energy is
//!
//! ```text
//! E = eta^2 / 2m + k^2 / 2m - omega (l + 1/2)
//! ```
//!
//! The wall condition `J_|nu|(eta rho0) = 0` fixes `eta`. Level `n` (from 0)
//! uses the `(n + 1)`-th zero, which is the zero the large-argument estimate
//! `eta rho0 = n pi + |nu| pi / 2 + 3 pi / 4` approximates.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::PhysicalParams;
use crate::oracle::sign_changes;
use crate::specfun::{bessel_j, BesselOrder, BesselZeros};

/// Levels with `eta rho0` below this are flagged: the large-argument
/// estimate is not trustworthy there.
pub const ASYMPTOTIC_RELIABLE_FROM: f64 = 5.0;

pub const MIN_GRID_SIZE: usize = 64;

/// Residual above which [`hamiltonian_residual`] reports the grid as too coarse.
pub const MAX_RESIDUAL: f64 = 0.1;

/// Eigenvalue of `sigma^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn from_value(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            other => Err(Error::InvalidParameter(format!(
                "spin must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "+1",
            Spin::Down => "-1",
        })
    }
}

/// `(n, l, s)`; ordering is lexicographic in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    /// Radial index, from 0.
    pub n: u32,
    pub l: i64,
    pub s: Spin,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: i64, s: Spin) -> Self {
        Self { n, l, s }
    }
}

/// `nu_s = l + (1 - s)/2 - zeta k`. Only `|nu_s|` enters the regular solution.
pub fn effective_order(qn: &QuantumNumbers, params: &PhysicalParams) -> f64 {
    let spin_shift = 0.5 * (1 - qn.s.value()) as f64;
    qn.l as f64 + spin_shift - params.zeta() * params.k()
}

/// The rotation coupling `-omega (l + 1/2)`.
pub fn page_werner_shift(qn: &QuantumNumbers, params: &PhysicalParams) -> f64 {
    -params.omega() * (qn.l as f64 + 0.5)
}

/// `E = eta^2/2m + k^2/2m - omega (l + 1/2)`.
pub fn energy_from_eta(eta: f64, qn: &QuantumNumbers, params: &PhysicalParams) -> f64 {
    let m = params.mass();
    let k = params.k();
    eta * eta / (2.0 * m) + k * k / (2.0 * m) + page_werner_shift(qn, params)
}

/// Large-argument estimate of `eta rho0` for level `n`.
pub fn asymptotic_eta_rho0(nu_abs: f64, n: u32) -> f64 {
    (n as f64 + 0.5 * nu_abs + 0.75) * PI
}

/// Closed-form asymptotic energy, written in terms of `omega` and `zeta`
/// directly rather than through `rho0`.
pub fn energy_asymptotic(qn: &QuantumNumbers, params: &PhysicalParams) -> f64 {
    let m = params.mass();
    let w = params.omega();
    let z = params.zeta();
    let k = params.k();
    let nu = effective_order(qn, params).abs();
    let bracket = qn.n as f64 * PI + 0.5 * PI * nu + 0.75 * PI;
    w * w / (1.0 - w * w * z * z) * bracket * bracket / (2.0 * m) + k * k / (2.0 * m)
        - w * (qn.l as f64 + 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    /// Signed effective order `nu_s`.
    pub nu: f64,
    pub rho0: f64,
    pub eta_exact: f64,
    pub eta_asym: f64,
    pub energy_exact: f64,
    pub energy_asym: f64,
    /// `|eta_asym / eta_exact - 1|`.
    pub rel_err_eta: f64,
}

impl EnergyLevel {
    pub fn eta_rho0(&self) -> f64 {
        self.eta_exact * self.rho0
    }

    pub fn asymptotic_unreliable(&self) -> bool {
        self.eta_rho0() < ASYMPTOTIC_RELIABLE_FROM
    }
}

fn assemble_level(qn: QuantumNumbers, params: &PhysicalParams, zero: f64) -> EnergyLevel {
    let rho0 = params.rho0();
    let nu = effective_order(&qn, params);
    let eta_exact = zero / rho0;
    let eta_asym = asymptotic_eta_rho0(nu.abs(), qn.n) / rho0;
    EnergyLevel {
        qn,
        nu,
        rho0,
        eta_exact,
        eta_asym,
        energy_exact: energy_from_eta(eta_exact, &qn, params),
        energy_asym: energy_asymptotic(&qn, params),
        rel_err_eta: (eta_asym / eta_exact - 1.0).abs(),
    }
}

/// Exact level from the `(n + 1)`-th zero of `J_|nu|`.
pub fn energy_exact(qn: &QuantumNumbers, params: &PhysicalParams) -> Result<EnergyLevel> {
    let order = BesselOrder::from_signed(effective_order(qn, params))?;
    let mut zeros = BesselZeros::new(order);
    let mut zero = zeros.next_zero()?;
    for _ in 0..qn.n {
        zero = zeros.next_zero()?;
    }
    Ok(assemble_level(*qn, params, zero))
}

/// Levels `n = 0..=n_max` for one `(l, s)`, sharing a single zero scan.
pub fn levels_for_channel(
    l: i64,
    s: Spin,
    n_max: u32,
    params: &PhysicalParams,
) -> Result<Vec<EnergyLevel>> {
    let probe = QuantumNumbers::new(0, l, s);
    let order = BesselOrder::from_signed(effective_order(&probe, params))?;
    let mut zeros = BesselZeros::new(order);
    (0..=n_max)
        .map(|n| {
            let zero = zeros.next_zero()?;
            Ok(assemble_level(QuantumNumbers::new(n, l, s), params, zero))
        })
        .collect()
}

/// All levels for `l_min..=l_max`, the given spins and `n = 0..=n_max`,
/// ordered by `(n, l, s)`.
pub fn level_table(
    params: &PhysicalParams,
    l_min: i64,
    l_max: i64,
    n_max: u32,
    spins: &[Spin],
) -> Result<Vec<EnergyLevel>> {
    let mut out = Vec::new();
    for l in l_min..=l_max {
        for &s in spins {
            out.extend(levels_for_channel(l, s, n_max, params)?);
        }
    }
    out.sort_by_key(|l| l.qn);
    Ok(out)
}

/// Sampled radial function `A J_|nu|(eta rho)` on `rho_i = i rho0 / N`,
/// `i = 1..=N`, unit-normalized under `rho drho`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMode {
    pub qn: QuantumNumbers,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Quadrature weights for `int |R|^2 rho drho`, including the factor `rho`.
    pub norm_weight: Vec<f64>,
    pub amplitude: f64,
    pub nu: f64,
    pub eta: f64,
}

impl RadialMode {
    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.norm_weight)
            .map(|(r, w)| w * r * r)
            .sum()
    }

    pub fn wall_value(&self) -> f64 {
        *self.values.last().expect("grid is never empty")
    }

    /// Sign changes strictly inside `(0, rho0)`.
    pub fn node_count(&self) -> usize {
        sign_changes(&self.values[..self.values.len() - 1])
    }

    pub fn grid_step(&self) -> f64 {
        self.grid[0]
    }
}

/// Composite Simpson weights on `N` uniform intervals of width `h`, node 0
/// included. An odd `N` closes with the 3/8 rule on the last three intervals.
pub fn simpson_weights(intervals: usize, h: f64) -> Vec<f64> {
    assert!(intervals >= 3, "need at least three intervals");
    let mut w = vec![0.0; intervals + 1];
    let simpson_end = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals - 3
    };
    for (j, wj) in w.iter_mut().enumerate().take(simpson_end + 1) {
        *wj = if j == 0 || j == simpson_end {
            h / 3.0
        } else if j % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        };
    }
    if simpson_end < intervals {
        let e = simpson_end;
        for (offset, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[e + offset] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

pub fn radial_mode(
    qn: &QuantumNumbers,
    params: &PhysicalParams,
    grid_size: usize,
) -> Result<RadialMode> {
    if grid_size < MIN_GRID_SIZE {
        return Err(Error::Resolution(format!(
            "{grid_size} samples, at least {MIN_GRID_SIZE} required"
        )));
    }
    let level = energy_exact(qn, params)?;
    let rho0 = level.rho0;
    let h = rho0 / grid_size as f64;
    let mut grid: Vec<f64> = (1..=grid_size).map(|i| i as f64 * h).collect();
    grid[grid_size - 1] = rho0;

    let order = BesselOrder::from_signed(level.nu)?;
    let raw = grid
        .iter()
        .map(|&rho| bessel_j(order, level.eta_exact * rho))
        .collect::<Result<Vec<_>>>()?;

    let weights = simpson_weights(grid_size, h);
    let norm_weight: Vec<f64> = grid
        .iter()
        .zip(&weights[1..])
        .map(|(rho, w)| rho * w)
        .collect();
    let raw_norm: f64 = raw.iter().zip(&norm_weight).map(|(r, w)| w * r * r).sum();
    let amplitude = 1.0 / raw_norm.sqrt();

    Ok(RadialMode {
        qn: *qn,
        grid,
        values: raw.iter().map(|r| amplitude * r).collect(),
        norm_weight,
        amplitude,
        nu: level.nu,
        eta: level.eta_exact,
    })
}

/// Radial operator `R'' + c R'/rho - C R/rho^2`. The first-derivative
/// coefficient `c = 1` is what the spin connection `i gamma^1 / (2 rho)`
/// leaves behind after the nonrelativistic reduction; it is exposed so that
/// a deliberately wrong operator can be checked to fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOperator {
    pub first_derivative: f64,
}

impl Default for RadialOperator {
    fn default() -> Self {
        Self {
            first_derivative: 1.0,
        }
    }
}

/// The separated Schrodinger-Pauli equation, term by term, for
/// `phi ~ exp(-iEt) exp(i(l + 1/2)phi) exp(ikz)` with `sigma^3 phi = s phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerms {
    /// `2m` times the `1/rho^2` coefficient: from `(d_phi - zeta d_z)^2`,
    /// the `sigma^3` cross term and the `1/(8 m rho^2)` term.
    pub centrifugal: f64,
    /// `i omega d_phi` on the angular factor.
    pub rotation: f64,
    /// `-(1/2m) d_z^2` on the axial factor.
    pub axial: f64,
}

pub fn pauli_terms(qn: &QuantumNumbers, params: &PhysicalParams) -> PauliTerms {
    let m = params.mass();
    let k = params.k();
    // (d_phi - zeta d_z) acts as multiplication by i * j_eff
    let j_eff = qn.l as f64 + 0.5 - params.zeta() * k;
    let s = qn.s.value() as f64;
    let angular = j_eff * j_eff;
    let spin_cross = -s * j_eff;
    let connection = 0.25;
    PauliTerms {
        centrifugal: angular + spin_cross + connection,
        rotation: -params.omega() * (qn.l as f64 + 0.5),
        axial: k * k / (2.0 * m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianCheck {
    /// `||L[R] + eta^2 R|| / ||eta^2 R||` over the interior grid.
    pub residual: f64,
    /// `|E(reassembled) - level.energy_exact|`.
    pub energy_mismatch: f64,
    /// `|centrifugal - nu^2|`.
    pub centrifugal_mismatch: f64,
}

pub fn hamiltonian_residual(
    mode: &RadialMode,
    level: &EnergyLevel,
    params: &PhysicalParams,
) -> Result<HamiltonianCheck> {
    hamiltonian_residual_with(mode, level, params, RadialOperator::default())
}

pub fn hamiltonian_residual_with(
    mode: &RadialMode,
    level: &EnergyLevel,
    params: &PhysicalParams,
    operator: RadialOperator,
) -> Result<HamiltonianCheck> {
    if mode.qn != level.qn {
        return Err(Error::InvalidParameter(format!(
            "mode {:?} and level {:?} differ",
            mode.qn, level.qn
        )));
    }
    let terms = pauli_terms(&level.qn, params);
    let m = params.mass();
    let eta2 = level.eta_exact * level.eta_exact;

    let reassembled = eta2 / (2.0 * m) + terms.axial + terms.rotation;
    let energy_mismatch = (reassembled - level.energy_exact).abs();
    let centrifugal_mismatch = (terms.centrifugal - level.nu * level.nu).abs();
    let scale = level.energy_exact.abs().max(1.0);
    if energy_mismatch > 1e-12 * scale || centrifugal_mismatch > 1e-12 * terms.centrifugal.max(1.0)
    {
        return Err(Error::InconsistentLevel(format!(
            "energy mismatch {energy_mismatch:e}, centrifugal mismatch {centrifugal_mismatch:e}"
        )));
    }

    let h = mode.grid_step();
    let r = &mode.values;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 1..r.len() - 1 {
        let rho = mode.grid[i];
        let d2 = (r[i + 1] - 2.0 * r[i] + r[i - 1]) / (h * h);
        let d1 = (r[i + 1] - r[i - 1]) / (2.0 * h);
        let op = d2 + operator.first_derivative * d1 / rho - terms.centrifugal / (rho * rho) * r[i];
        let target = eta2 * r[i];
        num += (op + target).powi(2);
        den += target * target;
    }
    let residual = (num / den).sqrt();
    if residual.is_nan() || residual > MAX_RESIDUAL {
        return Err(Error::Resolution(format!(
            "operator residual {residual:e} exceeds {MAX_RESIDUAL}"
        )));
    }
    Ok(HamiltonianCheck {
        residual,
        energy_mismatch,
        centrifugal_mismatch,
    })
}
