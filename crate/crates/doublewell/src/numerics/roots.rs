//! Scan-and-bracket root finding for the transcendental eigenvalue residuals.
//!
//! The residuals of the square-well and Morse eigenvalue equations carry two
//! hazards a plain scanner mishandles: poles (sign changes where |f|
//! diverges, which must not be reported as eigenvalues) and near-degenerate
//! doublets (two genuine roots closer together than the scan step, visible
//! only as a dip of |f| toward zero). Both get dedicated treatment here.

use super::NumericsError;

/// A sign-change interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, NumericsError> {
        if !(lo < hi) || !(f_lo * f_hi < 0.0) {
            return Err(NumericsError::NoBracket { lo, hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
    pub scan_points: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_iter: 200,
            scan_points: 2000,
        }
    }
}

/// Ratio of |f(midpoint)| to the smaller endpoint magnitude above which a
/// sign change is classified as a pole and skipped.
const POLE_FACTOR: f64 = 1e6;
/// Extra subdivision applied around local minima of |f| that undershoot
/// their neighbours, to split doublet roots tighter than the scan grid.
const DIP_SUBDIVISION: usize = 64;
const DIP_RATIO: f64 = 1e-2;

/// Finds all sign-change roots of `f` on [lo, hi].
///
/// Sampling is uniform on `scan_points` points; each bracket is refined by
/// safeguarded bisection/secant steps to `abs_tol`. Poles are excluded.
/// Returns the ascending list; an empty list when nothing brackets.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Vec<f64> {
    assert!(lo < hi, "find_roots needs lo < hi");
    let n = cfg.scan_points.max(2);
    let mut roots = Vec::new();
    let mut xs = Vec::with_capacity(n + 1);
    let mut fs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut x = lo + (hi - lo) * i as f64 / n as f64;
        let mut fx = f(x);
        if fx == 0.0 {
            // Exact zero on the grid: record it and sample just inside the
            // cell so neighbouring roots still produce sign changes.
            roots.push(x);
            x += (hi - lo) / n as f64 * 1e-7;
            fx = f(x);
        }
        xs.push(x);
        fs.push(fx);
    }

    for i in 0..n {
        collect_cell_roots(&f, xs[i], xs[i + 1], fs[i], fs[i + 1], cfg, &mut roots);
        // Dip refinement: |f| dips sharply without an endpoint sign change,
        // a signature of an even number of roots inside the cell.
        if i > 0 && i + 1 < fs.len() {
            let here = fs[i].abs();
            if here < DIP_RATIO * fs[i - 1].abs().min(fs[i + 1].abs())
                && fs[i - 1] * fs[i] > 0.0
                && fs[i] * fs[i + 1] > 0.0
            {
                refine_dip(&f, xs[i - 1], xs[i + 1], cfg, &mut roots);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= cfg.abs_tol.max(cfg.rel_tol * a.abs()));
    roots
}

fn collect_cell_roots<F: Fn(f64) -> f64>(
    f: &F,
    x0: f64,
    x1: f64,
    f0: f64,
    f1: f64,
    cfg: &RootConfig,
    roots: &mut Vec<f64>,
) {
    if f0 == 0.0 {
        roots.push(x0);
        return;
    }
    if f0 * f1 < 0.0 {
        if let Some(r) = refine_bracket(f, x0, x1, f0, f1, cfg) {
            roots.push(r);
        }
    }
}

fn refine_dip<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    cfg: &RootConfig,
    roots: &mut Vec<f64>,
) {
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=DIP_SUBDIVISION {
        let x = lo + (hi - lo) * i as f64 / DIP_SUBDIVISION as f64;
        let fx = f(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if prev_f * fx < 0.0 {
            if let Some(r) = refine_bracket(f, prev_x, x, prev_f, fx, cfg) {
                roots.push(r);
            }
        }
        prev_x = x;
        prev_f = fx;
    }
}

/// Safeguarded secant-within-bisection refinement. Returns `None` when the
/// converged point looks like a pole rather than a root.
fn refine_bracket<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    cfg: &RootConfig,
) -> Option<f64> {
    let entry_scale = f_lo.abs().min(f_hi.abs());
    for _ in 0..cfg.max_iter {
        // Refine past abs_tol down to machine width: eigenvalues feed
        // closed-form coefficients whose conditioning amplifies root error.
        let scale = lo.abs().max(hi.abs());
        let tol = (4.0 * f64::EPSILON * scale).min(cfg.abs_tol).max(f64::MIN_POSITIVE);
        if hi - lo <= tol {
            break;
        }
        // Secant proposal, clamped into the middle 90% of the bracket.
        let mut x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        let guard = 0.05 * (hi - lo);
        if !(x > lo + guard && x < hi - guard) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx == 0.0 {
            lo = x;
            hi = x;
            f_lo = fx;
            break;
        }
        if f_lo * fx < 0.0 {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
    }
    let root = 0.5 * (lo + hi);
    let f_root = f(root);
    // A pole converges with |f| exploding; a root converges with |f|
    // collapsing relative to where the bracket started.
    if f_root.abs() > POLE_FACTOR * entry_scale.max(f64::MIN_POSITIVE) && f_root.abs() > 1.0 {
        return None;
    }
    if !f_root.is_finite() {
        return None;
    }
    Some(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sqrt_two() {
        let roots = find_roots(|x| x * x - 2.0, 1.0, 2.0, &RootConfig::default());
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sine_roots() {
        let roots = find_roots(f64::sin, 1.0, 7.0, &RootConfig::default());
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - PI).abs() < 1e-12);
        assert!((roots[1] - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn tangent_pole_rejected() {
        let roots = find_roots(f64::tan, 1.0, 2.0, &RootConfig::default());
        assert!(roots.is_empty(), "pole at pi/2 reported as {roots:?}");
    }

    #[test]
    fn polynomial_roots_recovered() {
        // (x+2)(x-0.5)(x-1)(x-3)
        let f = |x: f64| (x + 2.0) * (x - 0.5) * (x - 1.0) * (x - 3.0);
        let roots = find_roots(f, -3.0, 4.0, &RootConfig::default());
        let expect = [-2.0, 0.5, 1.0, 3.0];
        assert_eq!(roots.len(), expect.len());
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-11, "{r} vs {e}");
        }
    }

    #[test]
    fn close_pair_found_by_dip_refinement() {
        // Roots 1e-4 apart with a 2000-point grid over [0, 10]: the cell is
        // 5e-3 wide, so only the dip logic can see them.
        let (r1, r2) = (4.00000, 4.00010);
        let f = move |x: f64| (x - r1) * (x - r2) * (1.0 + 0.1 * x);
        let roots = find_roots(f, 0.0, 10.0, &RootConfig::default());
        assert_eq!(roots.len(), 2, "found {roots:?}");
        assert!((roots[0] - r1).abs() < 1e-9);
        assert!((roots[1] - r2).abs() < 1e-9);
    }

    #[test]
    fn empty_when_no_crossing() {
        let roots = find_roots(|x| x * x + 1.0, -5.0, 5.0, &RootConfig::default());
        assert!(roots.is_empty());
    }
}
