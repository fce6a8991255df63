//! Independent finite-difference eigensolver used as ground truth.
//!
//! Second-order central differences on a uniform grid with Dirichlet ends
//! turn the stationary Schrödinger equation into a symmetric tridiagonal
//! eigenproblem, solved by Sturm-sequence bisection (values) and inverse
//! iteration (vectors). Each reported level carries a Richardson error
//! estimate from re-solving at twice the resolution.

use crate::config::PhysConfig;
use crate::potential::{Parity, PotentialSpec};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("grid too coarse: error estimate {estimate:e} exceeds requested bound {bound:e}")]
    Grid { estimate: f64, bound: f64 },
    #[error("parity correlation {correlation} is inconclusive")]
    AmbiguousParity { correlation: f64 },
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("fewer than {requested} levels resolvable on this grid")]
    TooFewLevels { requested: usize },
}

/// A discretized Dirichlet problem on [x_lo, x_hi].
#[derive(Clone)]
pub struct GridProblem {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n_points: usize,
    pub potential: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Cell-averaged sampler (x, h) ↦ (1/h)∫ U over [x−h/2, x+h/2], used in
    /// place of point sampling when present. Step potentials need this to
    /// keep the scheme second-order when region edges fall inside cells.
    pub cell_average: Option<Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>>,
    /// Interior coordinates forced to act as hard walls (e.g. x = 0 for the
    /// x² + B²/x² family, whose centrifugal term diverges there).
    pub hard_walls: Vec<f64>,
    /// When set, `solve_grid` fails with `GridError` if any requested
    /// level's Richardson estimate exceeds this bound.
    pub max_error: Option<f64>,
}

impl GridProblem {
    pub fn new<F>(x_lo: f64, x_hi: f64, n_points: usize, potential: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            x_lo,
            x_hi,
            n_points,
            potential: Arc::new(potential),
            cell_average: None,
            hard_walls: Vec::new(),
            max_error: None,
        }
    }

    pub fn with_cell_average<F>(mut self, avg: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        self.cell_average = Some(Arc::new(avg));
        self
    }

    pub fn with_hard_wall(mut self, x: f64) -> Self {
        self.hard_walls.push(x);
        self
    }

    pub fn with_max_error(mut self, bound: f64) -> Self {
        self.max_error = Some(bound);
        self
    }

    /// Natural discretization for each potential family: exact walls where
    /// the family has them, and a tail allowance where it does not.
    pub fn for_potential(spec: &PotentialSpec, phys: &PhysConfig, n_levels: usize) -> Self {
        let mass = phys.mass;
        match spec {
            PotentialSpec::SquareWell(s) => {
                let s = *s;
                let point = move |x: f64| {
                    if x < -s.c {
                        0.0
                    } else if x <= s.a {
                        s.u0
                    } else {
                        -s.w0
                    }
                };
                // Exact cell average of the piecewise-constant profile.
                let average = move |x: f64, h: f64| {
                    let (lo, hi) = (x - 0.5 * h, x + 0.5 * h);
                    let overlap = |a: f64, b: f64| (hi.min(b) - lo.max(a)).max(0.0);
                    (s.u0 * overlap(-s.c, s.a) - s.w0 * overlap(s.a, s.b)) / h
                };
                Self::new(-s.d, s.b, 4000, point).with_cell_average(average)
            }
            PotentialSpec::MorsePair(m) => {
                let m = *m;
                Self::new(-m.d, m.b, 4000, move |x| {
                    if x < 0.0 {
                        let e = (-m.alpha * (x + m.c)).exp();
                        m.depth_left * (e * e - 2.0 * e)
                    } else {
                        let e = (m.beta * (x - m.a)).exp();
                        m.depth_right * (e * e - 2.0 * e)
                    }
                })
            }
            PotentialSpec::ParabolicPair(p) => {
                let p = *p;
                let alpha = (mass * p.w / phys.hbar).sqrt();
                // Classical turning point of the highest requested level
                // plus a generous Gaussian tail.
                let e_max = phys.hbar * p.w * (n_levels as f64 + 1.5);
                let spread = (2.0 * e_max / mass).sqrt() / p.w + 8.0 / alpha;
                let half = p.a + spread;
                Self::new(-half, half, 4000, move |x| {
                    let shift = if x < 0.0 { x + p.a } else { x - p.a };
                    0.5 * mass * p.w * p.w * shift * shift
                })
            }
            PotentialSpec::InvSquare(s) => {
                let s = *s;
                let e_max = 2.0 * phys.hbar * s.w * (n_levels as f64 + 4.0);
                let x_max = (2.0 * e_max / (mass * s.w * s.w)).sqrt()
                    + 8.0 * (phys.hbar / (mass * s.w)).sqrt();
                if s.b_param > 0.0 {
                    // Hard wall at the centrifugal singularity.
                    Self::new(0.0, x_max, 4000, move |x| {
                        let xx = x.max(1e-300);
                        0.5 * mass * s.w * s.w * (xx * xx + s.b_param * s.b_param / (xx * xx))
                    })
                } else {
                    Self::new(-x_max, x_max, 4000, move |x| 0.5 * mass * s.w * s.w * x * x)
                }
            }
        }
    }
}

/// One oracle level: the Richardson-extrapolated eigenvalue and the
/// discretization error estimate it carries.
#[derive(Debug, Clone, Copy)]
pub struct OracleLevel {
    pub energy: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    pub levels: Vec<OracleLevel>,
}

impl OracleSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Tridiagonal Dirichlet discretization at a given resolution.
struct Discretization {
    xs: Vec<f64>,
    diag: Vec<f64>,
    /// off[i] couples node i and i+1; zeroed across hard walls.
    off: Vec<f64>,
}

fn discretize(problem: &GridProblem, n_points: usize) -> Result<Discretization, OracleError> {
    if n_points < 3 {
        return Err(OracleError::Invalid("need at least 3 grid points".into()));
    }
    if !(problem.x_lo < problem.x_hi) {
        return Err(OracleError::Invalid("x_lo must be below x_hi".into()));
    }
    let h = (problem.x_hi - problem.x_lo) / (n_points as f64 + 1.0);
    let xs: Vec<f64> = (1..=n_points)
        .map(|i| problem.x_lo + h * i as f64)
        .collect();
    let mut diag = Vec::with_capacity(n_points);
    for &x in &xs {
        let u = match &problem.cell_average {
            Some(avg) => avg(x, h),
            None => (problem.potential)(x),
        };
        if !u.is_finite() {
            return Err(OracleError::Invalid(format!(
                "potential not finite at x = {x}"
            )));
        }
        diag.push(u);
    }
    let mut off = vec![1.0f64; n_points - 1];
    for wall in &problem.hard_walls {
        if *wall <= problem.x_lo || *wall >= problem.x_hi {
            continue;
        }
        // Cut the coupling across the wall coordinate.
        for i in 0..n_points - 1 {
            if xs[i] < *wall && *wall <= xs[i + 1] {
                off[i] = 0.0;
            }
        }
    }
    Ok(Discretization { xs, diag, off })
}

fn hamiltonian(disc: &Discretization, problem: &GridProblem, phys: &PhysConfig) -> (Vec<f64>, Vec<f64>) {
    let n = disc.xs.len();
    let h = (problem.x_hi - problem.x_lo) / (n as f64 + 1.0);
    let t = phys.hbar * phys.hbar / (2.0 * phys.mass * h * h);
    let diag: Vec<f64> = disc.diag.iter().map(|u| u + 2.0 * t).collect();
    let off: Vec<f64> = disc.off.iter().map(|c| -t * c).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `lambda`
/// (Sturm sequence via the LDLᵀ recurrence).
fn count_below(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - lambda;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if d == 0.0 { 1e-300 } else { d };
        d = diag[i] - lambda - off[i - 1] * off[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th (0-based) eigenvalue by bisection on the Sturm count.
fn eigenvalue_k(diag: &[f64], off: &[f64], k: usize) -> f64 {
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = diag.len();
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i + 1 < n {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let mut width = hi - lo;
    while width > 1e-14 * hi.abs().max(lo.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        width = hi - lo;
    }
    0.5 * (lo + hi)
}

/// Eigenvector by inverse iteration with partial-pivoting tridiagonal solves.
fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    // Deterministic, sign-varied seed.
    let mut v: Vec<f64> = (0..n)
        .map(|i| {
            let t = (i as f64 * 0.7511 + 0.3).sin();
            if t == 0.0 {
                0.5
            } else {
                t
            }
        })
        .collect();
    normalize(&mut v);
    let shift = lambda + 1e-10 * lambda.abs().max(1.0);
    for _ in 0..4 {
        v = solve_shifted(diag, off, shift, &v);
        normalize(&mut v);
    }
    v
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Solves (T − shift·I) x = b for tridiagonal T with partial pivoting.
/// Band storage: `d` main diagonal, `u1`/`u2` first and second
/// superdiagonals (`u2` is fill-in created by row swaps).
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
    let mut u1 = vec![0.0f64; n];
    u1[..n - 1].copy_from_slice(off);
    let mut u2 = vec![0.0f64; n];
    let mut rhs = b.to_vec();
    for i in 0..n - 1 {
        // Entry (i+1, i) is still the original subdiagonal value: earlier
        // steps only touched rows ≤ i+1 at columns ≥ i.
        let mut sub = off[i];
        if sub.abs() > d[i].abs() {
            std::mem::swap(&mut d[i], &mut sub);
            let old_u1 = u1[i];
            u1[i] = d[i + 1];
            d[i + 1] = old_u1;
            // u2[i] is untouched before its own step, so the displaced
            // row's second superdiagonal entry is zero.
            u2[i] = if i + 1 < n - 1 { u1[i + 1] } else { 0.0 };
            u1[i + 1] = 0.0;
            rhs.swap(i, i + 1);
        }
        let pivot = if d[i] == 0.0 { 1e-300 } else { d[i] };
        let m = sub / pivot;
        d[i + 1] -= m * u1[i];
        u1[i + 1] -= m * u2[i];
        rhs[i + 1] -= m * rhs[i];
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= u2[i] * x[i + 2];
        }
        let pivot = if d[i] == 0.0 { 1e-300 } else { d[i] };
        x[i] = acc / pivot;
    }
    x
}

fn lowest_eigenvalues(
    problem: &GridProblem,
    phys: &PhysConfig,
    n_points: usize,
    n_levels: usize,
) -> Result<Vec<f64>, OracleError> {
    let disc = discretize(problem, n_points)?;
    let (diag, off) = hamiltonian(&disc, problem, phys);
    if n_levels > diag.len() {
        return Err(OracleError::TooFewLevels {
            requested: n_levels,
        });
    }
    Ok((0..n_levels).map(|k| eigenvalue_k(&diag, &off, k)).collect())
}

/// Lowest `n_levels` Dirichlet eigenvalues with Richardson error estimates.
pub fn solve_grid(
    problem: &GridProblem,
    n_levels: usize,
    phys: &PhysConfig,
) -> Result<OracleSpectrum, OracleError> {
    if n_levels == 0 {
        return Err(OracleError::Invalid("n_levels must be at least 1".into()));
    }
    let coarse = lowest_eigenvalues(problem, phys, problem.n_points, n_levels)?;
    let fine = lowest_eigenvalues(problem, phys, 2 * problem.n_points, n_levels)?;
    let mut levels = Vec::with_capacity(n_levels);
    for (ec, ef) in coarse.iter().zip(&fine) {
        // Second-order scheme: E(h) = E + C h², so the h/2 result is 4×
        // closer and (4·E_f − E_c)/3 cancels the leading term.
        let extrapolated = (4.0 * ef - ec) / 3.0;
        let estimate = ((ef - ec) / 3.0).abs().max(1e-13 * ef.abs());
        levels.push(OracleLevel {
            energy: extrapolated,
            error_estimate: estimate,
        });
    }
    if let Some(bound) = problem.max_error {
        if let Some(worst) = levels
            .iter()
            .map(|l| l.error_estimate)
            .max_by(f64::total_cmp)
        {
            if worst > bound {
                return Err(OracleError::Grid {
                    estimate: worst,
                    bound,
                });
            }
        }
    }
    Ok(OracleSpectrum { levels })
}

/// Normalized eigenvector samples (grid_xs, values) for level `index`,
/// computed on the doubled grid.
pub fn eigenvector_samples(
    problem: &GridProblem,
    index: usize,
    phys: &PhysConfig,
) -> Result<(Vec<f64>, Vec<f64>), OracleError> {
    let n_points = 2 * problem.n_points;
    let disc = discretize(problem, n_points)?;
    let (diag, off) = hamiltonian(&disc, problem, phys);
    if index >= diag.len() {
        return Err(OracleError::TooFewLevels {
            requested: index + 1,
        });
    }
    let lambda = eigenvalue_k(&diag, &off, index);
    let v = eigenvector(&diag, &off, lambda);
    Ok((disc.xs, v))
}

/// Parity of eigenstate `index` for a potential symmetric about the domain
/// midpoint, from the reflection correlation of its eigenvector.
pub fn parity_of_state(
    problem: &GridProblem,
    index: usize,
    phys: &PhysConfig,
) -> Result<Parity, OracleError> {
    let (xs, v) = eigenvector_samples(problem, index, phys)?;
    let mid = 0.5 * (problem.x_lo + problem.x_hi);
    // Sanity: the sampler must actually be symmetric.
    for i in (0..xs.len()).step_by(xs.len() / 16 + 1) {
        let u1 = (problem.potential)(xs[i]);
        let u2 = (problem.potential)(2.0 * mid - xs[i]);
        let scale = u1.abs().max(u2.abs()).max(1.0);
        if (u1 - u2).abs() > 1e-8 * scale {
            return Err(OracleError::Invalid(
                "potential is not symmetric about the domain midpoint".into(),
            ));
        }
    }
    let n = v.len();
    let mut corr = 0.0;
    let mut norm = 0.0;
    for i in 0..n {
        corr += v[i] * v[n - 1 - i];
        norm += v[i] * v[i];
    }
    let c = corr / norm;
    if c > 0.9 {
        Ok(Parity::Even)
    } else if c < -0.9 {
        Ok(Parity::Odd)
    } else {
        Err(OracleError::AmbiguousParity { correlation: c })
    }
}

/// Interior sign changes of eigenstate `index` (skipping near-zero noise).
pub fn node_count(
    problem: &GridProblem,
    index: usize,
    phys: &PhysConfig,
) -> Result<usize, OracleError> {
    let (_, v) = eigenvector_samples(problem, index, phys)?;
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-6 * peak;
    let mut nodes = 0;
    let mut last_sign = 0.0;
    for &x in &v {
        if x.abs() < floor {
            continue;
        }
        let s = x.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    Ok(nodes)
}
