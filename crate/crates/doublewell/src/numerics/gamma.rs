//! Log-gamma with sign, via the Lanczos approximation.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Returns (ln|Γ(x)|, sign of Γ(x)). At the poles x ∈ {0, −1, −2, …} the
/// log is +∞ and the sign is 0.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x <= 0.0 && x == x.floor() {
        return (f64::INFINITY, 0.0);
    }
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
        let (lg, sg) = ln_gamma_signed(1.0 - x);
        let s = (PI * x).sin();
        let ln = PI.ln() - s.abs().ln() - lg;
        (ln, s.signum() * sg)
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        let ln = 0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln();
        (ln, 1.0)
    }
}

/// Γ(x) as a plain f64; overflows to ±∞ for large arguments.
pub fn gamma(x: f64) -> f64 {
    let (ln, sign) = ln_gamma_signed(x);
    sign * ln.exp()
}
