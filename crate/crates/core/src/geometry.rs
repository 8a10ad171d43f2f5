//! Rotating-frame geometry of the cosmic dislocation spacetime.
//!
//! Coordinates are ordered `(t, rho, phi, z)` throughout and the local
//! Minkowski metric is `eta = diag(-1, 1, 1, 1)`. The rest-frame line element
//!
//! ```text
//! ds^2 = -dT^2 + dR^2 + R^2 dPhi^2 + (dZ + zeta dPhi)^2
//! ```
//!
//! is pulled back along `T = t, R = rho, Phi = phi + omega t, Z = z`. The
//! rotating coordinates are only valid inside `0 < rho < rho0` with
//! `rho0 = sqrt(1 - zeta^2 omega^2) / omega`; at `rho0` the `g_tt` component
//! changes sign.
//!
//! Off-diagonal metric entries follow the symmetric convention: a cross term
//! `2 A dx dy` in the line element contributes `A` to both `g_xy` and `g_yx`.

use std::f64::consts::PI;

use num_traits::Num;

use crate::error::{Error, Result};

pub type Matrix4 = [[f64; 4]; 4];

/// Coefficients of a 1-form in the coordinate basis `(dt, drho, dphi, dz)`.
pub type OneForm = [f64; 4];

/// Antisymmetric components `F_{mu nu}` of a 2-form `F = 1/2 F_{mu nu} dx^mu ^ dx^nu`.
pub type TwoForm = [[f64; 4]; 4];

pub const T: usize = 0;
pub const RHO: usize = 1;
pub const PHI: usize = 2;
pub const Z: usize = 3;

pub const MINKOWSKI: Matrix4 = [
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// Physical inputs in natural units (`hbar = c = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    omega: f64,
    zeta: f64,
    k: f64,
}

impl PhysicalParams {
    /// Validates `mass > 0`, `omega > 0`, `zeta >= 0` and `zeta * omega < 1`.
    pub fn new(mass: f64, omega: f64, zeta: f64, k: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain("mass", mass));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::domain("omega", omega));
        }
        if !(zeta.is_finite() && zeta >= 0.0) {
            return Err(Error::domain("zeta", zeta));
        }
        if !k.is_finite() {
            return Err(Error::domain("k", k));
        }
        singular_radius(omega, zeta)?;
        Ok(Self {
            mass,
            omega,
            zeta,
            k,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Axial wavenumber.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Radius of the rotating-frame coordinate singularity.
    pub fn rho0(&self) -> f64 {
        rho0_unchecked(self.omega, self.zeta)
    }

    pub fn frame(&self) -> RotatingFrame {
        RotatingFrame {
            omega: self.omega,
            zeta: self.zeta,
        }
    }

    pub fn with_mass(self, mass: f64) -> Result<Self> {
        Self::new(mass, self.omega, self.zeta, self.k)
    }

    pub fn with_omega(self, omega: f64) -> Result<Self> {
        Self::new(self.mass, omega, self.zeta, self.k)
    }

    pub fn with_zeta(self, zeta: f64) -> Result<Self> {
        Self::new(self.mass, self.omega, zeta, self.k)
    }

    pub fn with_k(self, k: f64) -> Result<Self> {
        Self::new(self.mass, self.omega, self.zeta, k)
    }
}

/// The two numbers the geometry depends on. Unlike [`PhysicalParams`] this
/// allows `omega = 0` (a static frame) and does not require a finite wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatingFrame {
    pub omega: f64,
    pub zeta: f64,
}

impl RotatingFrame {
    pub fn new(omega: f64, zeta: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::domain("omega", omega));
        }
        if !(zeta.is_finite() && zeta >= 0.0) {
            return Err(Error::domain("zeta", zeta));
        }
        Ok(Self { omega, zeta })
    }
}

impl From<&PhysicalParams> for RotatingFrame {
    fn from(p: &PhysicalParams) -> Self {
        p.frame()
    }
}

fn rho0_unchecked(omega: f64, zeta: f64) -> f64 {
    let zw = zeta * omega;
    (1.0 - zw * zw).sqrt() / omega
}

/// `rho0 = sqrt(1 - zeta^2 omega^2) / omega`, the outer edge of the region
/// where the rotating coordinates are timelike.
pub fn singular_radius(omega: f64, zeta: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain("omega", omega));
    }
    if !(zeta.is_finite() && zeta >= 0.0) {
        return Err(Error::domain("zeta", zeta));
    }
    let product = zeta * omega;
    if product >= 1.0 {
        return Err(Error::NoAdmissibleRegion {
            zeta,
            omega,
            product,
        });
    }
    Ok(rho0_unchecked(omega, zeta))
}

fn check_radius(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("rho", rho))
    }
}

/// Rotating-frame metric, generic over the scalar so that it can be
/// evaluated in exact rational arithmetic.
pub fn rotating_metric<S: Num + Clone>(omega: S, zeta: S, rho: S) -> [[S; 4]; 4] {
    let z = S::zero;
    let one = S::one;
    let w2 = omega.clone() * omega.clone();
    let r2 = rho.clone() * rho;
    let z2 = zeta.clone() * zeta.clone();

    let g_tt = z() - (one() - w2.clone() * r2.clone() - z2.clone() * w2);
    let g_tphi = omega.clone() * r2.clone() + z2.clone() * omega.clone();
    let g_tz = zeta.clone() * omega;
    let g_phiphi = r2 + z2;
    let g_phiz = zeta;

    [
        [g_tt, z(), g_tphi.clone(), g_tz.clone()],
        [z(), one(), z(), z()],
        [g_tphi, z(), g_phiphi, g_phiz.clone()],
        [g_tz, z(), g_phiz, one()],
    ]
}

/// Rest-frame metric in `(T, R, Phi, Z)`, generic over the scalar.
pub fn rest_metric<S: Num + Clone>(zeta: S, r: S) -> [[S; 4]; 4] {
    let z = S::zero;
    let one = S::one;
    let g_phiphi = r.clone() * r + zeta.clone() * zeta.clone();
    [
        [z() - one(), z(), z(), z()],
        [z(), one(), z(), z()],
        [z(), z(), g_phiphi, zeta.clone()],
        [z(), z(), zeta, one()],
    ]
}

/// `d X^A / d x^mu` for `T = t, R = rho, Phi = phi + omega t, Z = z`.
pub fn rotation_jacobian<S: Num + Clone>(omega: S) -> [[S; 4]; 4] {
    let z = S::zero;
    let one = S::one;
    [
        [one(), z(), z(), z()],
        [z(), one(), z(), z()],
        [omega, z(), one(), z()],
        [z(), z(), z(), one()],
    ]
}

/// `g'_{mu nu} = J^A_mu J^B_nu g_{AB}`.
pub fn pullback<S: Num + Clone>(g: &[[S; 4]; 4], jacobian: &[[S; 4]; 4]) -> [[S; 4]; 4] {
    let mut out: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = S::zero();
            for a in 0..4 {
                for b in 0..4 {
                    acc = acc + jacobian[a][mu].clone() * jacobian[b][nu].clone() * g[a][b].clone();
                }
            }
            out[mu][nu] = acc;
        }
    }
    out
}

pub fn metric_components(frame: &RotatingFrame, rho: f64) -> Result<Matrix4> {
    check_radius(rho)?;
    Ok(rotating_metric(frame.omega, frame.zeta, rho))
}

pub fn rest_frame_metric(zeta: f64, r: f64) -> Result<Matrix4> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain("R", r));
    }
    if !zeta.is_finite() {
        return Err(Error::domain("zeta", zeta));
    }
    Ok(rest_metric(zeta, r))
}

/// Fermi-Walker tetrad `e^a_mu` (row `a`, column `mu`):
///
/// ```text
/// theta^0 = dt
/// theta^1 = drho
/// theta^2 = rho omega dt + rho dphi
/// theta^3 = zeta omega dt + zeta dphi + dz
/// ```
pub fn tetrad_components(frame: &RotatingFrame, rho: f64) -> Result<Matrix4> {
    check_radius(rho)?;
    Ok(tetrad_unchecked(frame, rho))
}

fn tetrad_unchecked(frame: &RotatingFrame, rho: f64) -> Matrix4 {
    let RotatingFrame { omega, zeta } = *frame;
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [rho * omega, 0.0, rho, 0.0],
        [zeta * omega, 0.0, zeta, 1.0],
    ]
}

/// `d e^a_mu / d rho`; the tetrad has no other coordinate dependence.
fn tetrad_rho_derivative(frame: &RotatingFrame) -> Matrix4 {
    let mut d = [[0.0; 4]; 4];
    d[2][T] = frame.omega;
    d[2][PHI] = 1.0;
    d
}

/// `g_{mu nu} = e^a_mu e^b_nu eta_ab`.
pub fn metric_from_tetrad(e: &Matrix4) -> Matrix4 {
    let mut g = [[0.0; 4]; 4];
    for (mu, row) in g.iter_mut().enumerate() {
        for (nu, g_mn) in row.iter_mut().enumerate() {
            *g_mn = (0..4).map(|a| MINKOWSKI[a][a] * e[a][mu] * e[a][nu]).sum();
        }
    }
    g
}

/// Largest `|e^a_mu e^b_nu eta_ab - g_mu_nu|` at `rho`.
pub fn tetrad_compatibility_residual(frame: &RotatingFrame, rho: f64) -> Result<f64> {
    let g = metric_components(frame, rho)?;
    let from_tetrad = metric_from_tetrad(&tetrad_components(frame, rho)?);
    Ok(max_abs_diff(&g, &from_tetrad))
}

pub fn max_abs_diff(a: &Matrix4, b: &Matrix4) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn determinant(m: &Matrix4) -> f64 {
    // Laplace expansion along the first row.
    let minor = |skip_col: usize| -> f64 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip_col).collect();
        let r = |i: usize, j: usize| m[i + 1][cols[j]];
        r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1))
            - r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0))
            + r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0))
    };
    (0..4)
        .map(|c| {
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][c] * minor(c)
        })
        .sum()
}

/// One nonzero component `omega_mu{}^a{}_b` of the connection 1-form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionComponent {
    pub mu: usize,
    pub a: usize,
    pub b: usize,
    pub value: f64,
}

/// Nonzero connection components for the Fermi-Walker tetrad:
/// `omega_phi^1_2 = -1`, `omega_t^1_2 = -omega`, and their antisymmetric
/// partners.
pub fn connection_components(frame: &RotatingFrame) -> Vec<ConnectionComponent> {
    let c = |mu, a, b, value| ConnectionComponent { mu, a, b, value };
    vec![
        c(T, 1, 2, -frame.omega),
        c(T, 2, 1, frame.omega),
        c(PHI, 1, 2, -1.0),
        c(PHI, 2, 1, 1.0),
    ]
}

fn connection_forms(frame: &RotatingFrame) -> [[OneForm; 4]; 4] {
    let mut forms = [[[0.0; 4]; 4]; 4];
    for c in connection_components(frame) {
        forms[c.a][c.b][c.mu] = c.value;
    }
    forms
}

pub fn wedge(alpha: &OneForm, beta: &OneForm) -> TwoForm {
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = alpha[mu] * beta[nu] - alpha[nu] * beta[mu];
        }
    }
    out
}

/// Exterior derivative of a 1-form whose coefficients depend on `rho` only,
/// given `d theta_mu / d rho`.
fn exterior_derivative_rho(d_rho: &OneForm) -> TwoForm {
    let mut out = [[0.0; 4]; 4];
    for nu in 0..4 {
        out[RHO][nu] = d_rho[nu];
        out[nu][RHO] = -d_rho[nu];
    }
    out[RHO][RHO] = 0.0;
    out
}

/// Central-difference exterior derivative of a `rho`-dependent 1-form.
pub fn exterior_derivative_fd<F>(form: F, rho: f64, h: f64) -> TwoForm
where
    F: Fn(f64) -> OneForm,
{
    let plus = form(rho + h);
    let minus = form(rho - h);
    let mut d_rho = [0.0; 4];
    for mu in 0..4 {
        d_rho[mu] = (plus[mu] - minus[mu]) / (2.0 * h);
    }
    exterior_derivative_rho(&d_rho)
}

/// How the `d theta^a` term of the structure equations is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Differentiation {
    Analytic,
    CentralDifference { step: f64 },
}

/// `max |T^a_{mu nu}|` with `T^a = d theta^a + omega^a_b ^ theta^b`, which
/// vanishes off the defect axis.
pub fn structure_equation_residual(frame: &RotatingFrame, rho: f64) -> Result<f64> {
    structure_equation_residual_with(frame, rho, Differentiation::Analytic)
}

pub fn structure_equation_residual_with(
    frame: &RotatingFrame,
    rho: f64,
    mode: Differentiation,
) -> Result<f64> {
    check_radius(rho)?;
    let torsion = torsion_off_axis(frame, rho, mode)?;
    Ok(torsion
        .iter()
        .flat_map(|t| t.iter().flatten())
        .fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// Torsion 2-forms `T^a` at `rho > 0`, computed from the structure equations.
pub fn torsion_off_axis(
    frame: &RotatingFrame,
    rho: f64,
    mode: Differentiation,
) -> Result<[TwoForm; 4]> {
    check_radius(rho)?;
    let tetrad = tetrad_unchecked(frame, rho);
    let connection = connection_forms(frame);
    let mut torsion = [[[0.0; 4]; 4]; 4];

    let d_theta: [TwoForm; 4] = match mode {
        Differentiation::Analytic => {
            let d = tetrad_rho_derivative(frame);
            std::array::from_fn(|a| exterior_derivative_rho(&d[a]))
        }
        Differentiation::CentralDifference { step } => {
            if !(step > 0.0 && step < rho) {
                return Err(Error::domain("finite-difference step", step));
            }
            std::array::from_fn(|a| {
                exterior_derivative_fd(|r| tetrad_unchecked(frame, r)[a], rho, step)
            })
        }
    };

    for a in 0..4 {
        let mut t_a = d_theta[a];
        for b in 0..4 {
            let w = wedge(&connection[a][b], &tetrad[b]);
            for mu in 0..4 {
                for nu in 0..4 {
                    t_a[mu][nu] += w[mu][nu];
                }
            }
        }
        torsion[a] = t_a;
    }
    Ok(torsion)
}

/// The torsion of the defect is supported on the axis only, where it is a
/// delta function `T^3 = 2 pi zeta delta(rho) delta(phi) drho ^ dphi`. Only
/// its bookkeeping is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionDefect {
    pub defect_on_axis: bool,
    /// Coefficient `2 pi zeta` of the delta-supported `T^3`.
    pub coefficient: f64,
}

pub fn axis_torsion(frame: &RotatingFrame) -> TorsionDefect {
    TorsionDefect {
        defect_on_axis: frame.zeta != 0.0,
        coefficient: 2.0 * PI * frame.zeta,
    }
}

/// Metric, tetrad and connection at one spacetime point.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    /// `(t, rho, phi, z)`.
    pub point: [f64; 4],
    pub metric: Matrix4,
    pub tetrad: Matrix4,
    pub connection: Vec<ConnectionComponent>,
}

pub fn frame_field(frame: &RotatingFrame, point: [f64; 4]) -> Result<FrameField> {
    let rho = point[RHO];
    Ok(FrameField {
        point,
        metric: metric_components(frame, rho)?,
        tetrad: tetrad_components(frame, rho)?,
        connection: connection_components(frame),
    })
}

/// `n` radii spaced logarithmically over `[lo, hi]`.
pub fn log_radii(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}
