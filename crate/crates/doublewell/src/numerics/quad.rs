//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! The worst panel (by its G7/K15 error estimate) is split repeatedly until
//! the summed estimate meets the tolerance. Kronrod nodes are interior, so
//! integrable endpoint singularities — turning-point momenta vanishing like
//! √, or even inverse-√ blowups — are never sampled at the singular point
//! and effort piles onto the offending end automatically.

use super::NumericsError;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights; QUADPACK dqk15 constants.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

const MAX_PANELS: usize = 4000;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let hl = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = hl * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        let fsum = f1 + f2;
        resk += WGK[i] * fsum;
        resabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            resg += WG[i / 2] * fsum;
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for (i, &w) in WGK.iter().enumerate().take(7) {
        resasc += w * ((fv[i] - reskh).abs() + (fv[14 - i] - reskh).abs());
    }
    let value = resk * hl;
    let resasc = resasc * hl.abs();
    let mut error = ((resk - resg) * hl).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * 1.0f64.min((200.0 * error / resasc).powf(1.5));
    }
    let round = 50.0 * f64::EPSILON * resabs * hl.abs();
    if round > f64::MIN_POSITIVE {
        error = error.max(round);
    }
    Panel { a, b, value, error }
}

/// ∫ f dx on [lo, hi], adaptive to absolute error ≤ `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError> {
    assert!(tol > 0.0, "integrate needs tol > 0");
    if lo == hi {
        return Ok(0.0);
    }
    let (a, b, sign) = if lo < hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
    let width = b - a;
    let first = gk15(&f, a, b);
    if !first.value.is_finite() {
        return Err(NumericsError::Convergence(
            "integrand not finite at quadrature nodes".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut total_value = first.value;
    let mut total_error = first.error;
    // Error locked in panels too narrow to split further.
    let mut stuck_error = 0.0;
    heap.push(first);

    let mut panels = 1usize;
    while total_error > tol && panels < MAX_PANELS {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.b - worst.a <= 1e-15 * width || mid <= worst.a || mid >= worst.b {
            total_error -= worst.error;
            stuck_error += worst.error;
            continue;
        }
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        if !left.value.is_finite() || !right.value.is_finite() {
            return Err(NumericsError::Convergence(
                "integrand not finite at quadrature nodes".into(),
            ));
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    let remaining = total_error + stuck_error;
    if remaining > tol.max(1e-12 * total_value.abs()) && remaining > tol * 10.0 {
        return Err(NumericsError::Convergence(format!(
            "quadrature error estimate {remaining:e} above tolerance {tol:e}"
        )));
    }
    Ok(sign * total_value)
}
