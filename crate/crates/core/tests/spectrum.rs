// reference values are kept at the digits the tables were printed with
#![allow(clippy::excessive_precision)]

use dspec_core::geometry::PhysicalParams;
use dspec_core::specfun::{bessel_j, BesselOrder};
use dspec_core::spectrum::*;
use dspec_core::Error;
use std::f64::consts::PI;

fn params(mass: f64, omega: f64, zeta: f64, k: f64) -> PhysicalParams {
    PhysicalParams::new(mass, omega, zeta, k).unwrap()
}

fn base() -> PhysicalParams {
    params(1.0, 0.1, 0.0, 0.0)
}

fn qn(n: u32, l: i64, s: Spin) -> QuantumNumbers {
    QuantumNumbers::new(n, l, s)
}

/// `|J_1(j_{0,k})|` for k = 1..6, from mpmath.
const J1_AT_J0_ZEROS: [f64; 6] = [
    0.51914749728946679,
    0.34026480655836815,
    0.27145229992838192,
    0.23245983136472478,
    0.20654643307799603,
    0.18772880304043943,
];

#[test]
fn ground_level_reference() {
    let level = energy_exact(&qn(0, 0, Spin::Up), &base()).unwrap();
    assert!((level.eta_exact - 0.2404825557695773).abs() < 1e-15);
    assert!((level.energy_exact + 0.021084070185266076).abs() < 1e-12);
    assert!(level.asymptotic_unreliable());
    assert!((level.rel_err_eta - 0.020222).abs() < 1e-5);

    let down = energy_exact(&qn(0, 0, Spin::Down), &base()).unwrap();
    assert_eq!(down.nu, 1.0);
    assert!((down.eta_exact - 0.38317059702075123).abs() < 1e-15);
}

#[test]
fn asymptotic_energy_closed_form() {
    let e = energy_asymptotic(&qn(0, 0, Spin::Up), &base());
    let expected = (0.75 * PI).powi(2) / 200.0 - 0.05;
    assert!((e - expected).abs() < 1e-15);
    // same thing through rho0 and the level record
    let level = energy_exact(&qn(0, 0, Spin::Up), &base()).unwrap();
    assert!((level.energy_asym - e).abs() < 1e-15);
    assert!((energy_from_eta(level.eta_asym, &level.qn, &base()) - e).abs() < 1e-15);
}

#[test]
fn exact_eta_sits_on_a_bessel_zero() {
    let p = params(2.0, 0.3, 0.7, 1.3);
    for level in level_table(&p, -3, 3, 12, &Spin::BOTH).unwrap() {
        let order = BesselOrder::from_signed(level.nu).unwrap();
        let j = bessel_j(order, level.eta_rho0()).unwrap();
        assert!(j.abs() < 1e-10, "{:?}: {j:e}", level.qn);
        let e = energy_from_eta(level.eta_exact, &level.qn, &p);
        assert_eq!(e, level.energy_exact);
    }
}

#[test]
fn asymptotic_error_decreases_with_n() {
    let p = base();
    for (l, s, nu) in [(0, Spin::Up, 0.0), (1, Spin::Down, 2.0)] {
        let levels = levels_for_channel(l, s, 50, &p).unwrap();
        assert_eq!(levels[0].nu, nu);
        for w in levels.windows(2) {
            assert!(w[1].rel_err_eta < w[0].rel_err_eta);
            let d0 = (w[0].eta_asym - w[0].eta_exact).abs();
            let d1 = (w[1].eta_asym - w[1].eta_exact).abs();
            assert!(d1 < d0);
        }
    }
    let n20 = energy_exact(&qn(20, 0, Spin::Up), &p).unwrap();
    assert!((n20.eta_rho0() - 65.18996480020686).abs() < 1e-11);
    assert!(n20.rel_err_eta < 1e-4);
}

#[test]
fn asymptotic_error_bound() {
    let p = base();
    for nu in [0.0, 0.5, 1.5, 2.5, 4.0] {
        let p = p.with_zeta(1.0).unwrap().with_k(-nu).unwrap();
        for level in levels_for_channel(0, Spin::Up, 50, &p)
            .unwrap()
            .iter()
            .skip(5)
        {
            let exact = level.eta_rho0();
            let asym = level.eta_asym * level.rho0;
            let bound = 1.5 * (4.0 * nu * nu - 1.0).abs() / (8.0 * exact);
            assert!(
                (asym - exact).abs() <= bound + 1e-12,
                "nu={nu} n={}",
                level.qn.n
            );
        }
    }
}

#[test]
fn parabolic_growth() {
    // E_asym(n)/n^2 -> pi^2/(2 m rho0^2) with relative deviation
    // (1 + (|nu|/2 + 3/4)/n)^2 - 1, about 1.5% at n = 100 for nu = 0.
    let p = base();
    let limit = PI * PI / (2.0 * p.rho0().powi(2));
    let offset = p.k().powi(2) / 2.0 - p.omega() * 0.5;
    for n in [100u32, 200, 400] {
        let e = energy_asymptotic(&qn(n, 0, Spin::Up), &p);
        let ratio = e / (n as f64).powi(2) / limit;
        let predicted = (1.0 + 0.75 / n as f64).powi(2) + offset / (n as f64).powi(2) / limit;
        assert!((ratio - predicted).abs() < 1e-12);
        if n >= 200 {
            assert!((ratio - 1.0).abs() < 0.01);
        }
    }
    // the second difference in n is exactly pi^2 / (m rho0^2)
    let e: Vec<f64> = (99..=101)
        .map(|n| energy_asymptotic(&qn(n, 0, Spin::Up), &p))
        .collect();
    assert!((e[2] - 2.0 * e[1] + e[0] - 2.0 * limit).abs() < 1e-9);
}

#[test]
fn eta_rho0_depends_only_on_order_and_index() {
    // two parameter sets with the same rho0 and |nu|
    let a = params(1.0, 0.1, 0.0, 0.0);
    let omega_b = 1.0 / 101.0_f64.sqrt();
    let b = params(7.5, omega_b, 1.0, 0.0);
    assert!((a.rho0() - b.rho0()).abs() < 1e-13);
    for n in 0..10 {
        let la = energy_exact(&qn(n, 2, Spin::Up), &a).unwrap();
        let lb = energy_exact(&qn(n, 2, Spin::Up), &b).unwrap();
        let rel = (la.eta_rho0() - lb.eta_rho0()).abs() / la.eta_rho0();
        assert!(rel < 1e-12);
    }
}

#[test]
fn torsion_leaves_page_werner_term_alone() {
    let omega = 0.2;
    let zk = 0.35;
    let reference = params(1.0, omega, 0.5, zk / 0.5);
    let zetas = [0.1, 0.5, 1.0, 2.5, 4.9];
    for l in -2..=2 {
        for s in Spin::BOTH {
            let q = qn(3, l, s);
            let r = energy_exact(&q, &reference).unwrap();
            for zeta in zetas {
                let p = params(1.0, omega, zeta, zk / zeta);
                let lv = energy_exact(&q, &p).unwrap();
                // rho0 moves with zeta at fixed omega; everything measured in
                // units of rho0 does not
                assert!((lv.nu - r.nu).abs() < 1e-12);
                assert!((lv.eta_rho0() - r.eta_rho0()).abs() < 1e-12 * r.eta_rho0());
                assert!((lv.rel_err_eta - r.rel_err_eta).abs() < 1e-12);
                let pw = lv.energy_exact - lv.eta_exact.powi(2) / 2.0 - p.k().powi(2) / 2.0;
                assert!((pw + omega * (l as f64 + 0.5)).abs() < 1e-12);
                assert_eq!(page_werner_shift(&q, &p), page_werner_shift(&q, &reference));
            }
        }
    }
}

#[test]
fn spin_pairs_share_eta_when_torsion_coupling_vanishes() {
    let p = params(1.0, 0.1, 0.3, 0.0);
    for l in 0..4 {
        for n in 0..5 {
            let down = energy_exact(&qn(n, l, Spin::Down), &p).unwrap();
            let up = energy_exact(&qn(n, l + 1, Spin::Up), &p).unwrap();
            assert_eq!(down.nu.abs(), up.nu.abs());
            assert_eq!(down.eta_exact, up.eta_exact);
            assert!((down.energy_exact - up.energy_exact - p.omega()).abs() < 1e-14);
        }
    }
}

#[test]
fn radial_modes_satisfy_the_wall_condition() {
    let p = base();
    for n in 0..=5u32 {
        let q = qn(n, 0, Spin::Up);
        let mode = radial_mode(&q, &p, 4096).unwrap();
        assert!(mode.wall_value().abs() < 1e-9);
        assert_eq!(mode.node_count(), n as usize);
        assert!((mode.norm() - 1.0).abs() < 1e-8);
        // int_0^rho0 J_0(j r / rho0)^2 r dr = rho0^2 J_1(j)^2 / 2
        let analytic = 2.0_f64.sqrt() / (p.rho0() * J1_AT_J0_ZEROS[n as usize]);
        assert!((mode.amplitude / analytic - 1.0).abs() < 1e-8, "n={n}");
    }
}

#[test]
fn radial_modes_for_fractional_orders() {
    let p = params(1.0, 0.3, 0.7, 1.3);
    for l in [-2, 0, 3] {
        for s in Spin::BOTH {
            for n in 0..=5u32 {
                let mode = radial_mode(&qn(n, l, s), &p, 2000).unwrap();
                assert!(mode.wall_value().abs() < 1e-9);
                assert_eq!(mode.node_count(), n as usize);
                assert!((mode.norm() - 1.0).abs() < 1e-12);
                assert!(mode.grid.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(*mode.grid.last().unwrap(), p.rho0());
            }
        }
    }
    assert!(matches!(
        radial_mode(&qn(0, 0, Spin::Up), &p, 63),
        Err(Error::Resolution(_))
    ));
}

#[test]
fn odd_sample_counts_integrate_correctly() {
    let p = base();
    let even = radial_mode(&qn(2, 0, Spin::Up), &p, 4096).unwrap();
    let odd = radial_mode(&qn(2, 0, Spin::Up), &p, 4095).unwrap();
    assert!((even.amplitude / odd.amplitude - 1.0).abs() < 1e-10);
}

#[test]
fn hamiltonian_residual_converges_at_second_order() {
    let p = base();
    // (l, s, ratio under grid doubling). For odd orders R''' is nonzero on the
    // axis, so the R'/rho stencil error ~ h^2/rho adds an h^1.5 piece to the
    // discrete L2 norm.
    for (l, s, expected, bound) in [
        (0, Spin::Up, 4.0, 1e-5),
        (1, Spin::Down, 4.0, 1e-5),
        (0, Spin::Down, 2.0_f64.powf(1.5), 3e-5),
    ] {
        for n in 0..=5u32 {
            let q = qn(n, l, s);
            let level = energy_exact(&q, &p).unwrap();
            let fine =
                hamiltonian_residual(&radial_mode(&q, &p, 4096).unwrap(), &level, &p).unwrap();
            let coarse =
                hamiltonian_residual(&radial_mode(&q, &p, 2048).unwrap(), &level, &p).unwrap();
            assert!(fine.residual < bound, "{q:?}: {:e}", fine.residual);
            let ratio = coarse.residual / fine.residual;
            assert!((ratio - expected).abs() < 0.2, "{q:?}: ratio {ratio}");
            assert!(fine.energy_mismatch < 1e-12);
            assert!(fine.centrifugal_mismatch < 1e-12);
        }
    }
}

#[test]
fn hamiltonian_residual_detects_wrong_eta() {
    let p = base();
    let q = qn(2, 0, Spin::Up);
    let level = energy_exact(&q, &p).unwrap();
    let mode = radial_mode(&q, &p, 4096).unwrap();
    let mut wrong = level;
    wrong.eta_exact *= 1.01;
    wrong.energy_exact = energy_from_eta(wrong.eta_exact, &q, &p);
    let check = hamiltonian_residual(&mode, &wrong, &p).unwrap();
    assert!(check.residual > 1e-2);

    // an energy that does not follow from eta is caught before the residual
    let mut inconsistent = level;
    inconsistent.energy_exact += 1e-6;
    assert!(matches!(
        hamiltonian_residual(&mode, &inconsistent, &p),
        Err(Error::InconsistentLevel(_))
    ));
    let other = energy_exact(&qn(3, 0, Spin::Up), &p).unwrap();
    assert!(hamiltonian_residual(&mode, &other, &p).is_err());
}

#[test]
fn wrong_first_derivative_sign_is_rejected() {
    let p = base();
    let q = qn(1, 0, Spin::Up);
    let level = energy_exact(&q, &p).unwrap();
    let mode = radial_mode(&q, &p, 4096).unwrap();
    let flipped = RadialOperator {
        first_derivative: -1.0,
    };
    match hamiltonian_residual_with(&mode, &level, &p, flipped) {
        Err(Error::Resolution(_)) => {}
        Ok(check) => panic!("residual {:e} passed", check.residual),
        Err(other) => panic!("{other}"),
    }
}

#[test]
fn pauli_terms_rebuild_the_centrifugal_coefficient() {
    let p = params(1.5, 0.2, 0.4, -2.25);
    for l in -3..=3 {
        for s in Spin::BOTH {
            let q = qn(0, l, s);
            let nu = effective_order(&q, &p);
            let t = pauli_terms(&q, &p);
            assert!((t.centrifugal - nu * nu).abs() < 1e-12);
            assert_eq!(t.rotation, page_werner_shift(&q, &p));
        }
    }
}

#[test]
fn level_table_is_sorted_and_complete() {
    let table = level_table(&base(), -1, 2, 3, &Spin::BOTH).unwrap();
    assert_eq!(table.len(), 4 * 2 * 4);
    assert!(table.windows(2).all(|w| w[0].qn < w[1].qn));
    let single = level_table(&base(), 0, 0, 0, &[Spin::Up]).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(
        single[0],
        energy_exact(&qn(0, 0, Spin::Up), &base()).unwrap()
    );
}
