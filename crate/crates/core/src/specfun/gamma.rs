//! Lanczos approximation of the gamma function (g = 7, 9 terms).

use std::f64::consts::PI;

const G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(z: f64) -> f64 {
    // z is the argument shifted down by one
    COEFFS[1..]
        .iter()
        .enumerate()
        .fold(COEFFS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

/// Gamma function for real `x` that is not a nonpositive integer.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let z = x - 1.0;
        let t = z + G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
    }
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}
