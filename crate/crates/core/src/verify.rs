//! Self-check suite behind `dspec verify`.
//!
//! Every check reports the measured worst case next to the tolerance it is
//! held to. A check whose computation errors out is recorded as failed with
//! an infinite measurement rather than aborting the run.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{self, PhysicalParams, RotatingFrame, T};
use crate::oracle;
use crate::specfun::{bessel_j, bessel_zero, BesselOrder};
use crate::spectrum::{self, QuantumNumbers, RadialOperator, Spin};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

/// Deliberate mistakes that the suite must catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the `R'/rho` term in the radial operator.
    FlipFirstDerivative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn below(
        &mut self,
        suite: &'static str,
        name: impl Into<String>,
        measured: Result<f64>,
        tolerance: f64,
    ) {
        let measured = measured.unwrap_or(f64::INFINITY);
        self.checks.push(Check {
            suite,
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<9} {:<52} measured {:.3e}  tolerated {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.measured,
                c.tolerance
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

pub fn run(depth: Depth, fault: Option<Fault>) -> Report {
    let mut report = Report::default();
    geometry_suite(&mut report);
    specfun_suite(&mut report);
    spectrum_suite(&mut report, depth, fault);
    oracle_suite(&mut report, depth);
    report
}

fn frames() -> [RotatingFrame; 3] {
    [
        RotatingFrame {
            omega: 0.1,
            zeta: 0.0,
        },
        RotatingFrame {
            omega: 0.3,
            zeta: 0.7,
        },
        RotatingFrame {
            omega: 1.0,
            zeta: 0.6,
        },
    ]
}

fn max_over<I, F>(items: I, mut f: F) -> Result<f64>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<f64>,
{
    items.into_iter().try_fold(0.0_f64, |m, x| Ok(m.max(f(x)?)))
}

/// Largest entry of column `i`, or the error that stopped the rows.
fn column<const N: usize>(rows: &Result<Vec<[f64; N]>>, i: usize) -> Result<f64> {
    match rows {
        Ok(rows) => Ok(rows.iter().fold(0.0_f64, |m, r| m.max(r[i]))),
        Err(e) => Err(Error::Evaluation(e.to_string())),
    }
}

fn region_radii(frame: &RotatingFrame) -> Result<Vec<f64>> {
    let rho0 = geometry::singular_radius(frame.omega, frame.zeta)?;
    Ok(geometry::log_radii(1e-3 * rho0, 0.999 * rho0, 10))
}

fn geometry_suite(r: &mut Report) {
    const S: &str = "geometry";
    let compat = max_over(frames(), |f| {
        max_over(region_radii(&f)?, |rho| {
            geometry::tetrad_compatibility_residual(&f, rho)
        })
    });
    r.below(S, "tetrad reproduces metric (10 log radii)", compat, 1e-14);

    let structure = max_over(frames(), |f| {
        max_over(region_radii(&f)?, |rho| {
            geometry::structure_equation_residual(&f, rho)
        })
    });
    r.below(S, "structure equations off axis", structure, 1e-12);

    let gtt = max_over(frames(), |f| {
        let rho0 = geometry::singular_radius(f.omega, f.zeta)?;
        Ok(geometry::metric_components(&f, rho0)?[T][T].abs())
    });
    r.below(S, "g_tt vanishes at rho0", gtt, 1e-14);

    let pullback = max_over(frames(), |f| {
        max_over(region_radii(&f)?, |rho| {
            let rest = geometry::rest_frame_metric(f.zeta, rho)?;
            let pulled = geometry::pullback(&rest, &geometry::rotation_jacobian(f.omega));
            Ok(geometry::max_abs_diff(
                &pulled,
                &geometry::metric_components(&f, rho)?,
            ))
        })
    });
    r.below(
        S,
        "rotating metric is the rest-frame pullback",
        pullback,
        1e-14,
    );
}

/// Values from an arbitrary-precision reference.
#[allow(clippy::excessive_precision)]
const J_REFERENCE: [(f64, f64, f64); 6] = [
    (0.0, 1.0, 0.76519768655796655),
    (1.0, 10.0, 0.043472746168861437),
    (2.5, 3.0, 0.41271003220971599),
    (0.3, 25.0, 0.028287780084076882),
    (20.0, 15.0, 0.0073602340792234853),
    (7.2, 40.0, -0.12234671117056758),
];

#[allow(clippy::excessive_precision)]
const ZERO_REFERENCE: [(f64, usize, f64); 4] = [
    (0.0, 1, 2.404825557695773),
    (1.0, 1, 3.831705970207512),
    (2.5, 1, 5.763459196894550),
    (0.0, 21, 65.18996480020686),
];

fn specfun_suite(r: &mut Report) {
    const S: &str = "specfun";
    let values = max_over(J_REFERENCE, |(nu, x, want)| {
        Ok((bessel_j(BesselOrder::new(nu)?, x)? / want - 1.0).abs())
    });
    r.below(S, "J_nu against reference values (relative)", values, 1e-12);

    let zeros = max_over(ZERO_REFERENCE, |(nu, n, want)| {
        Ok((bessel_zero(BesselOrder::new(nu)?, n)? / want - 1.0).abs())
    });
    r.below(S, "zeros against reference values (relative)", zeros, 1e-12);

    let recurrence = max_over([0.25, 1.0, 2.7, 9.5], |nu| {
        max_over([0.5, 3.0, 11.0, 30.0], |x| {
            let j = |v: f64| bessel_j(BesselOrder::new(v)?, x);
            let (a, b, c) = (j(nu)?, j(nu + 1.0)?, j(nu + 2.0)?);
            Ok((2.0 * (nu + 1.0) / x * b - a - c).abs() / a.abs().max(c.abs()).max(1e-300))
        })
    });
    r.below(S, "three-term recurrence", recurrence, 1e-10);

    let alternation = max_over([0.0, 0.5, 1.5, 7.2], |nu| {
        let order = BesselOrder::new(nu)?;
        let zeros = crate::specfun::bessel_zeros(order, 20)?;
        let mut bad = 0.0;
        for w in zeros.windows(2) {
            let mid = bessel_j(order, 0.5 * (w[0] + w[1]))?;
            let next_mid = bessel_j(order, w[1] + 1e-3)?;
            if mid.signum() == next_mid.signum() {
                bad += 1.0;
            }
        }
        Ok(bad)
    });
    r.below(S, "no zero skipped (sign alternation)", alternation, 0.5);
}

fn base_params() -> Result<PhysicalParams> {
    PhysicalParams::new(1.0, 0.1, 0.0, 0.0)
}

fn spectrum_suite(r: &mut Report, depth: Depth, fault: Option<Fault>) {
    const S: &str = "spectrum";
    let ground = base_params().and_then(|p| {
        let level = spectrum::energy_exact(&QuantumNumbers::new(0, 0, Spin::Up), &p)?;
        Ok((level.energy_exact + 0.021084070185266076).abs())
    });
    r.below(S, "ground energy (m=1, omega=0.1)", ground, 1e-12);

    let n_max = match depth {
        Depth::Quick => 10,
        Depth::Full => 50,
    };
    for nu in [0.0, 1.5, 2.5] {
        // nu = -zeta k at l = 0, s = +1
        let violations = base_params()
            .and_then(|p| p.with_zeta(1.0)?.with_k(-nu))
            .and_then(|p| spectrum::levels_for_channel(0, Spin::Up, n_max, &p))
            .map(|levels| {
                levels
                    .windows(2)
                    .filter(|w| w[1].rel_err_eta >= w[0].rel_err_eta)
                    .count() as f64
            });
        r.below(
            S,
            format!("asymptotic error decreasing, nu={nu}, n=0..{n_max}"),
            violations,
            0.5,
        );
    }
    let at = |n| {
        base_params()
            .and_then(|p| spectrum::energy_exact(&QuantumNumbers::new(n, 0, Spin::Up), &p))
            .map(|l| l.rel_err_eta)
    };
    r.below(S, "asymptotic error at n=0, nu=0", at(0), 0.021);
    r.below(S, "asymptotic error at n=20, nu=0", at(20), 1e-4);

    let torsion = (|| {
        let (omega, zk) = (0.2, 0.35);
        let reference = PhysicalParams::new(1.0, omega, 0.5, zk / 0.5)?;
        max_over([0.1, 1.0, 4.9], |zeta| {
            let p = PhysicalParams::new(1.0, omega, zeta, zk / zeta)?;
            max_over(-2..=2, |l| {
                let q = QuantumNumbers::new(2, l, Spin::Down);
                let a = spectrum::energy_exact(&q, &reference)?;
                let b = spectrum::energy_exact(&q, &p)?;
                let pw = |lv: &spectrum::EnergyLevel, p: &PhysicalParams| {
                    lv.energy_exact
                        - lv.eta_exact.powi(2) / (2.0 * p.mass())
                        - p.k().powi(2) / (2.0 * p.mass())
                };
                Ok((a.eta_rho0() - b.eta_rho0())
                    .abs()
                    .max((a.rel_err_eta - b.rel_err_eta).abs())
                    .max((pw(&a, &reference) - pw(&b, &p)).abs()))
            })
        })
    })();
    r.below(S, "Page-Werner term independent of torsion", torsion, 1e-12);

    let operator = match fault {
        Some(Fault::FlipFirstDerivative) => RadialOperator {
            first_derivative: -1.0,
        },
        None => RadialOperator::default(),
    };
    let modes: Result<Vec<_>> = (0..=5u32)
        .map(|n| {
            let q = QuantumNumbers::new(n, 0, Spin::Up);
            let p = base_params()?;
            let level = spectrum::energy_exact(&q, &p)?;
            let fine = spectrum::radial_mode(&q, &p, 4096)?;
            let coarse = spectrum::radial_mode(&q, &p, 2048)?;
            Ok((n, p, level, fine, coarse))
        })
        .collect();
    let shape: Result<Vec<[f64; 3]>> = match &modes {
        Ok(modes) => Ok(modes
            .iter()
            .map(|(n, _, _, fine, _)| {
                [
                    fine.wall_value().abs(),
                    (fine.node_count() as f64 - *n as f64).abs(),
                    (fine.norm() - 1.0).abs(),
                ]
            })
            .collect()),
        Err(e) => Err(Error::Evaluation(e.to_string())),
    };
    let residuals: Result<Vec<[f64; 2]>> = match &modes {
        Ok(modes) => modes
            .iter()
            .map(|(_, p, level, fine, coarse)| {
                let rf = spectrum::hamiltonian_residual_with(fine, level, p, operator)?.residual;
                let rc = spectrum::hamiltonian_residual_with(coarse, level, p, operator)?.residual;
                Ok([rf, (rc / rf - 4.0).abs()])
            })
            .collect(),
        Err(e) => Err(Error::Evaluation(e.to_string())),
    };
    let (wall, nodes, norm) = (column(&shape, 0), column(&shape, 1), column(&shape, 2));
    let (residual, ratio) = (column(&residuals, 0), column(&residuals, 1));
    r.below(S, "|R(rho0)| for n=0..5", wall, 1e-9);
    r.below(S, "node count minus n, n=0..5", nodes, 0.5);
    r.below(S, "unit normalization, n=0..5", norm, 1e-8);
    r.below(S, "hamiltonian residual at 4096 points", residual, 1e-5);
    r.below(
        S,
        "residual ratio 2048 -> 4096, distance from 4",
        ratio,
        0.2,
    );
}

/// Reference zeros so that the oracle is compared with something that is
/// not computed by this crate.
#[allow(clippy::excessive_precision)]
const ORACLE_ZEROS: [(f64, [f64; 5]); 5] = [
    (
        0.0,
        [
            2.404825557695773,
            5.520078110286311,
            8.653727912911012,
            11.79153443901428,
            14.93091770848779,
        ],
    ),
    (0.5, [PI, 2.0 * PI, 3.0 * PI, 4.0 * PI, 5.0 * PI]),
    (
        1.0,
        [
            3.831705970207512,
            7.015586669815619,
            10.17346813506272,
            13.32369193631422,
            16.47063005087763,
        ],
    ),
    (
        1.5,
        [
            4.493409457909064,
            7.725251836937707,
            10.90412165942890,
            14.06619391283147,
            17.22075527193077,
        ],
    ),
    (
        2.7,
        [
            6.011335431704748,
            9.362712244574426,
            12.60105997810049,
            15.79925770778818,
            18.97819769091557,
        ],
    ),
];

fn oracle_suite(r: &mut Report, depth: Depth) {
    const S: &str = "oracle";
    let finest = match depth {
        Depth::Quick => 2048,
        Depth::Full => oracle::DEFAULT_FINEST_INTERVALS,
    };
    // per eigenvalue: distance from the reference, from specfun, and of
    // the observed order from 2
    let rows: Result<Vec<[f64; 3]>> = ORACLE_ZEROS
        .iter()
        .flat_map(|&(nu, zeros)| [1.0, 10.0].map(move |rho0| (nu, zeros, rho0)))
        .map(|(nu, zeros, rho0)| {
            let ex = oracle::extrapolate_many(nu, rho0, 5, finest)?;
            let order = BesselOrder::new(nu)?;
            ex.iter()
                .zip(zeros)
                .enumerate()
                .map(|(i, (e, j))| {
                    let ours = bessel_zero(order, i + 1)? / rho0;
                    Ok([
                        (e.value / (j / rho0).powi(2) - 1.0).abs(),
                        (e.value / (ours * ours) - 1.0).abs(),
                        (e.order - 2.0).abs(),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.concat());
    let (rel, cross, order) = (column(&rows, 0), column(&rows, 1), column(&rows, 2));
    r.below(
        S,
        format!("eigenvalues vs reference zeros ({finest} pts)"),
        rel,
        1e-5,
    );
    r.below(S, "eigenvalues vs specfun zeros", cross, 1e-5);
    r.below(S, "observed order, distance from 2", order, 0.1);

    let scaling = max_over([0.0, 2.7], |nu| {
        let a = oracle::lowest_eigenvalues(&oracle::discretize(nu, 1.0, 1023)?, 3)?;
        let b = oracle::lowest_eigenvalues(&oracle::discretize(nu, 10.0, 1023)?, 3)?;
        Ok(a.iter()
            .zip(&b)
            .fold(0.0_f64, |m, (x, y)| m.max((100.0 * y / x - 1.0).abs())))
    });
    r.below(S, "1/rho0^2 scaling", scaling, 1e-10);

    let nodes = max_over([0.0, 1.5], |nu| {
        let op = oracle::discretize(nu, 1.0, 1023)?;
        max_over(1..=5, |k| {
            Ok((oracle::node_count(&op, k)? as f64 - (k - 1) as f64).abs())
        })
    });
    r.below(S, "eigenvector node count minus (index - 1)", nodes, 0.5);
}
