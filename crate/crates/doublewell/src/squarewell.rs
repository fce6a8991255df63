//! Complete solver for the infinite square double well: bound spectra,
//! wavefunction coefficients, barrier transmission, the linearized
//! commensurate spectrum with its oscillation period, and the per-region
//! level-coincidence classification.
//!
//! All transcendental residuals are kept in cleared, pole-free form and
//! scaled by e^{−2χ(a+c)} so nothing overflows even for barriers opaque
//! enough to push sinh(χ·width) past f64 range.

use crate::config::SolverConfig;
use crate::numerics::find_roots;
use crate::potential::{Level, Parity, PotentialSpec, SquareWellSpec, Spectrum, Well};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SquareWellError {
    #[error("no bound states found in (0, U0)")]
    NoBoundStates,
    #[error("energy {energy} is not an eigenvalue (matching residual {residual:e})")]
    NotAnEigenvalue { energy: f64, residual: f64 },
    #[error("energy {energy} outside the required range ({lo}, {hi})")]
    EnergyOutOfRange { energy: f64, lo: f64, hi: f64 },
    #[error("operation requires the symmetric geometry (d = b, c = a, W0 = 0)")]
    NotSymmetric,
    #[error("barrier opacity chi*(a+c) = {0} too large for coefficient evaluation")]
    Opacity(f64),
}

/// The three wavenumbers of the square-well solution at energy E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWavenumbers {
    pub k: f64,
    pub k3: f64,
    pub chi: f64,
}

pub fn wavenumbers(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<SquareWavenumbers, SquareWellError> {
    if !(energy > -spec.w0 && energy < spec.u0) {
        return Err(SquareWellError::EnergyOutOfRange {
            energy,
            lo: -spec.w0,
            hi: spec.u0,
        });
    }
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    Ok(SquareWavenumbers {
        k: (2.0 * m * energy.max(0.0)).sqrt() / hbar,
        k3: (2.0 * m * (energy + spec.w0)).sqrt() / hbar,
        chi: (2.0 * m * (spec.u0 - energy)).sqrt() / hbar,
    })
}

/// Cleared eigenvalue residual of the full asymmetric problem:
///
///   q·(χS₃ − k₃C₃)(χS − kC) − (χS₃ + k₃C₃)(χS + kC),   q = e^{−2χ(a+c)}
///
/// with S = sin(k(d−c)), S₃ = sin(k₃(b−a)). Roots coincide with the
/// textbook log-derivative matching; no poles anywhere in (0, U0).
pub fn residual_full(spec: &SquareWellSpec, cfg: &SolverConfig, energy: f64) -> f64 {
    let wn = match wavenumbers(spec, cfg, energy) {
        Ok(w) => w,
        Err(_) => return f64::NAN,
    };
    let (s, c) = (wn.k * spec.left_width()).sin_cos();
    let (s3, c3) = (wn.k3 * spec.right_width()).sin_cos();
    let q = (-2.0 * wn.chi * spec.barrier_width()).exp();
    q * (wn.chi * s3 - wn.k3 * c3) * (wn.chi * s - wn.k * c)
        - (wn.chi * s3 + wn.k3 * c3) * (wn.chi * s + wn.k * c)
}

/// `residual_full` scaled by the magnitudes of its factors, for
/// is-this-really-a-root checks at a uniform 1e-8 threshold.
pub fn residual_full_normalized(spec: &SquareWellSpec, cfg: &SolverConfig, energy: f64) -> f64 {
    let wn = match wavenumbers(spec, cfg, energy) {
        Ok(w) => w,
        Err(_) => return f64::NAN,
    };
    let (s, c) = (wn.k * spec.left_width()).sin_cos();
    let (s3, c3) = (wn.k3 * spec.right_width()).sin_cos();
    let scale = (wn.chi * s3.abs() + wn.k3 * c3.abs()) * (wn.chi * s.abs() + wn.k * c.abs());
    residual_full(spec, cfg, energy) / scale.max(f64::MIN_POSITIVE)
}

/// Parity-resolved residuals of the symmetric case, cleared of poles and
/// scaled by e^{−χa}:
///   even: (1+q̃)·k cos(kL) + (1−q̃)·χ sin(kL)
///   odd:  (1−q̃)·k cos(kL) + (1+q̃)·χ sin(kL)
/// with q̃ = e^{−2χa}, L = b − a. At a = 0 these reduce to the merged-box
/// conditions k cos(kL) = 0 and χ sin(kL) = 0.
pub fn residual_symmetric(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    parity: Parity,
    k: f64,
) -> f64 {
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let l = spec.b - spec.a;
    let k_max_sq = 2.0 * m * spec.u0 / (hbar * hbar);
    let chi = (k_max_sq - k * k).max(0.0).sqrt();
    let q = (-2.0 * chi * spec.a).exp();
    let (s, c) = (k * l).sin_cos();
    match parity {
        Parity::Even => (1.0 + q) * k * c + (1.0 - q) * chi * s,
        Parity::Odd => (1.0 - q) * k * c + (1.0 + q) * chi * s,
        Parity::None => f64::NAN,
    }
}

fn spectrum_from_energies(
    spec: &SquareWellSpec,
    energies: Vec<(f64, Parity)>,
    well: Well,
) -> Result<Spectrum, SquareWellError> {
    if energies.is_empty() {
        return Err(SquareWellError::NoBoundStates);
    }
    let levels = energies
        .into_iter()
        .map(|(energy, parity)| Level {
            energy,
            index: 0,
            parity,
            well,
        })
        .collect();
    Ok(Spectrum::from_levels(
        levels,
        PotentialSpec::SquareWell(*spec),
    ))
}

/// All bound levels of the full asymmetric problem on E ∈ (0, U0).
pub fn solve_spectrum_asymmetric(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
) -> Result<Spectrum, SquareWellError> {
    let lo = spec.u0 * 1e-9;
    let hi = spec.u0 * (1.0 - 1e-9);
    let roots = find_roots(|e| residual_full(spec, cfg, e), lo, hi, &cfg.root);
    let energies = roots
        .into_iter()
        .filter(|&e| residual_full_normalized(spec, cfg, e).abs() < 1e-6)
        .map(|e| (e, Parity::None))
        .collect();
    spectrum_from_energies(spec, energies, Well::Both)
}

/// Bound levels of the symmetric problem, solved per parity branch in
/// k ∈ (0, √(2mU0)/ħ) and cross-checked against the full residual.
pub fn solve_spectrum_symmetric(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
) -> Result<Spectrum, SquareWellError> {
    if !spec.is_symmetric() {
        return Err(SquareWellError::NotSymmetric);
    }
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let k_max = (2.0 * m * spec.u0).sqrt() / hbar;
    let mut energies = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let roots = find_roots(
            |k| residual_symmetric(spec, cfg, parity, k),
            k_max * 1e-9,
            k_max * (1.0 - 1e-12),
            &cfg.root,
        );
        for k in roots {
            let energy = (hbar * k) * (hbar * k) / (2.0 * m);
            let check = residual_full_normalized(spec, cfg, energy).abs();
            if check < 1e-8 {
                energies.push((energy, parity));
            } else {
                log::warn!(
                    "symmetric root k={k} fails the full residual ({check:e}); dropped"
                );
            }
        }
    }
    spectrum_from_energies(spec, energies, Well::Both)
}

/// Piecewise wavefunction with its region coefficients. `a1` comes from the
/// exact piecewise normalization integral; `a1_paper` is the closed-form
/// transcription kept alongside as a diagnostic.
#[derive(Debug, Clone)]
pub struct SquareWavefunction {
    pub level: Level,
    pub a1: f64,
    pub a2: f64,
    pub b2: f64,
    pub a3: f64,
    /// (−1)ⁿ for the symmetric construction.
    pub parity_sign: Option<f64>,
    pub a1_paper: f64,
    spec: SquareWellSpec,
    wn: SquareWavenumbers,
}

impl SquareWavefunction {
    pub fn eval(&self, x: f64) -> Result<f64, SquareWellError> {
        let s = &self.spec;
        if x < -s.d || x > s.b {
            return Err(SquareWellError::EnergyOutOfRange {
                energy: x,
                lo: -s.d,
                hi: s.b,
            });
        }
        Ok(if x < -s.c {
            self.a1 * (self.wn.k * (x + s.d)).sin()
        } else if x <= s.a {
            self.a2 * (self.wn.chi * x).exp() + self.b2 * (-self.wn.chi * x).exp()
        } else {
            self.a3 * (self.wn.k3 * (x - s.b)).sin()
        })
    }

    /// Relative disagreement between the exact-integral a₁ and the paper's
    /// closed form.
    pub fn paper_normalization_discrepancy(&self) -> f64 {
        (self.a1_paper / self.a1 - 1.0).abs()
    }

    pub fn wavenumbers(&self) -> SquareWavenumbers {
        self.wn
    }
}

/// ∫φ̂² with a1 = 1; exact piecewise closed form.
fn unnormalized_norm_sq(
    spec: &SquareWellSpec,
    wn: &SquareWavenumbers,
    a2: f64,
    b2: f64,
    a3: f64,
) -> f64 {
    let (k, k3, chi) = (wn.k, wn.k3, wn.chi);
    let w1 = spec.left_width();
    let w2 = spec.right_width();
    let region1 = 0.5 * w1 - (2.0 * k * w1).sin() / (4.0 * k);
    let region2 = a3 * a3 * (0.5 * w2 - (2.0 * k3 * w2).sin() / (4.0 * k3));
    let ea = (2.0 * chi * spec.a).exp();
    let ec = (2.0 * chi * spec.c).exp();
    let region3 = a2 * a2 * (ea - 1.0 / ec) / (2.0 * chi)
        + b2 * b2 * (ec - 1.0 / ea) / (2.0 * chi)
        + 2.0 * a2 * b2 * spec.barrier_width();
    region1 + region2 + region3
}

/// Eq (4.5) transcription, for the normalization cross-check.
fn paper_a1_asymmetric(spec: &SquareWellSpec, wn: &SquareWavenumbers) -> f64 {
    let (k, k3, chi) = (wn.k, wn.k3, wn.chi);
    let (s, c) = (k * spec.left_width()).sin_cos();
    let (s3, c3) = (k3 * spec.right_width()).sin_cos();
    let w = spec.barrier_width();
    let minus = s - k / chi * c;
    let plus = s + k / chi * c;
    let inv_sq = (spec.d - spec.c) / 2.0
        + (spec.a + spec.c) / 2.0 * (s * s - k * k / (chi * chi) * c * c)
        + (minus / (s3 + k3 / chi * c3)).powi(2)
            * (-2.0 * chi * w).exp()
            * ((spec.b - spec.a) / 2.0 + (2.0 * k3 * (spec.a - spec.b)).sin() / (4.0 * k3))
        - (2.0 * k * spec.left_width()).sin() / (4.0 * k)
        + plus * plus / (8.0 * chi) * ((2.0 * chi * w).exp() - 1.0)
        + minus * minus / (8.0 * chi) * (1.0 - (-2.0 * chi * w).exp());
    inv_sq.powf(-0.5)
}

/// Eq (4.9) transcription (symmetric case), for the cross-check.
fn paper_a1_symmetric(spec: &SquareWellSpec, wn: &SquareWavenumbers, parity_sign: f64) -> f64 {
    let (k, chi) = (wn.k, wn.chi);
    let l = spec.b - spec.a;
    let (s, c) = (k * l).sin_cos();
    let minus = s - k / chi * c;
    let e2 = (2.0 * chi * spec.a).exp();
    let inv_sq = l
        + minus * minus / (4.0 * e2) * (parity_sign * 2.0 * spec.a + (e2 - 1.0 / e2) / chi);
    inv_sq.powf(-0.5)
}

/// Builds the wavefunction for a solved level, deriving the coefficients
/// from the continuity conditions and the exact normalization integral.
pub fn wavefunction(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    level: &Level,
) -> Result<SquareWavefunction, SquareWellError> {
    let energy = level.energy;
    let wn = wavenumbers(spec, cfg, energy)?;
    if energy <= 0.0 {
        return Err(SquareWellError::EnergyOutOfRange {
            energy,
            lo: 0.0,
            hi: spec.u0,
        });
    }
    let opacity = wn.chi * spec.barrier_width();
    if opacity > 300.0 {
        return Err(SquareWellError::Opacity(opacity));
    }
    let residual = residual_full_normalized(spec, cfg, energy).abs();
    if residual > 1e-6 {
        return Err(SquareWellError::NotAnEigenvalue { energy, residual });
    }
    let (k, k3, chi) = (wn.k, wn.k3, wn.chi);
    let (s, c) = (k * spec.left_width()).sin_cos();
    // Left-side matching at x = −c (exact, off-eigenvalue too).
    let a2 = 0.5 * (chi * spec.c).exp() * (s + k / chi * c);
    let b2 = 0.5 * (-chi * spec.c).exp() * (s - k / chi * c);
    // Right coefficient from whichever matching row is better conditioned.
    let phi_a = a2 * (chi * spec.a).exp() + b2 * (-chi * spec.a).exp();
    let dphi_a = chi * (a2 * (chi * spec.a).exp() - b2 * (-chi * spec.a).exp());
    let (s_ab, c_ab) = (k3 * (spec.a - spec.b)).sin_cos();
    let a3 = if s_ab.abs() >= c_ab.abs() {
        phi_a / s_ab
    } else {
        dphi_a / (k3 * c_ab)
    };
    let norm_sq = unnormalized_norm_sq(spec, &wn, a2, b2, a3);
    let a1 = norm_sq.powf(-0.5);
    let (parity_sign, a1_paper) = if spec.is_symmetric() && level.parity != Parity::None {
        let sign = if level.parity == Parity::Even { 1.0 } else { -1.0 };
        (Some(sign), paper_a1_symmetric(spec, &wn, sign))
    } else {
        (None, paper_a1_asymmetric(spec, &wn))
    };
    Ok(SquareWavefunction {
        level: *level,
        a1,
        a2: a1 * a2,
        b2: a1 * b2,
        a3: a1 * a3,
        parity_sign,
        a1_paper,
        spec: *spec,
        wn,
    })
}

/// Transmission and reflection coefficients at energy E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    pub energy: f64,
    pub d: f64,
    pub r: f64,
}

/// Flux transmission/reflection through the barrier for a wave of energy
/// 0 < E < U0, exact closed form. Also used, following the formal
/// convention of the source analysis, at discrete-spectrum energies.
pub fn transmission(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<ScatteringSolution, SquareWellError> {
    if !(energy > 0.0 && energy < spec.u0) {
        return Err(SquareWellError::EnergyOutOfRange {
            energy,
            lo: 0.0,
            hi: spec.u0,
        });
    }
    let wn = wavenumbers(spec, cfg, energy)?;
    let (k, k3, chi) = (wn.k, wn.k3, wn.chi);
    let w = spec.barrier_width();
    // sinh/cosh scaled by e^{−χw} so opaque barriers cannot overflow.
    let em = (-2.0 * chi * w).exp();
    let sh = 0.5 * (1.0 - em);
    let ch = 0.5 * (1.0 + em);
    let p = (k * k3 + chi * chi).powi(2) * sh * sh;
    let q = chi * chi * (k - k3) * (k - k3) * ch * ch;
    let n = 4.0 * k * k3 * chi * chi * em;
    let denom = p + q + n;
    Ok(ScatteringSolution {
        energy,
        d: n / denom,
        r: (p + q) / denom,
    })
}

/// The linearized commensurate spectrum k_n = k₀(2n+1) and its period.
#[derive(Debug, Clone)]
pub struct LinearizedSpectrum {
    pub k0: f64,
    pub e0: f64,
    /// Largest common divisor of the level spacings: Δ = 4E₀.
    pub delta: f64,
    /// Oscillation period T = 2πħ/Δ = πħ/(2E₀).
    pub period: f64,
    /// (n, k_n, E_n) for every level below the barrier top.
    pub levels: Vec<(usize, f64, f64)>,
}

/// Linearization of the symmetric eigenvalue system: the arcsin term of the
/// graphical construction is replaced by its midline π/2, giving
/// k_n = (2n+1)·π/(2(b−a)) and the barrier-independent limiting period.
pub fn linearized_spectrum(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
) -> Result<LinearizedSpectrum, SquareWellError> {
    if !spec.is_symmetric() {
        return Err(SquareWellError::NotSymmetric);
    }
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let l = spec.b - spec.a;
    let k0 = std::f64::consts::PI / (2.0 * l);
    let e0 = (hbar * k0) * (hbar * k0) / (2.0 * m);
    let delta = 4.0 * e0;
    let period = 2.0 * std::f64::consts::PI * hbar / delta;
    let k_max = (2.0 * m * spec.u0).sqrt() / hbar;
    let mut levels = Vec::new();
    let mut n = 0usize;
    loop {
        let kn = k0 * (2 * n + 1) as f64;
        if kn >= k_max {
            break;
        }
        levels.push((n, kn, e0 * ((2 * n + 1) as f64).powi(2)));
        n += 1;
    }
    Ok(LinearizedSpectrum {
        k0,
        e0,
        delta,
        period,
        levels,
    })
}

/// Limiting oscillation period 4m(b−a)²/(πħ), approached both as the
/// barrier becomes opaque and as it vanishes.
pub fn limiting_period(spec: &SquareWellSpec, cfg: &SolverConfig) -> Result<f64, SquareWellError> {
    if !spec.is_symmetric() {
        return Err(SquareWellError::NotSymmetric);
    }
    let l = spec.b - spec.a;
    Ok(4.0 * cfg.phys.mass * l * l / (std::f64::consts::PI * cfg.phys.hbar))
}

/// Transmission coefficient of level n as a function of the oscillation
/// period T, via k² = (2n+1)²πm/(ħT) substituted into the exact formula.
pub fn d_of_period(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    n: usize,
    period: f64,
) -> Result<f64, SquareWellError> {
    if !spec.is_symmetric() {
        return Err(SquareWellError::NotSymmetric);
    }
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let odd = (2 * n + 1) as f64;
    let k_sq = odd * odd * std::f64::consts::PI * m / (hbar * period);
    d_from_k_sq(spec, cfg, k_sq)
}

/// Transmission coefficient of level n as a function of the common divisor
/// Δ, via k² = Δ·m(2n+1)²/(2ħ²).
pub fn d_of_delta(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    n: usize,
    delta: f64,
) -> Result<f64, SquareWellError> {
    if !spec.is_symmetric() {
        return Err(SquareWellError::NotSymmetric);
    }
    let hbar = cfg.phys.hbar;
    let odd = (2 * n + 1) as f64;
    let k_sq = delta * cfg.phys.mass * odd * odd / (2.0 * hbar * hbar);
    d_from_k_sq(spec, cfg, k_sq)
}

fn d_from_k_sq(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
    k_sq: f64,
) -> Result<f64, SquareWellError> {
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let energy = hbar * hbar * k_sq / (2.0 * m);
    if !(energy > 0.0 && energy < spec.u0) {
        return Err(SquareWellError::EnergyOutOfRange {
            energy,
            lo: 0.0,
            hi: spec.u0,
        });
    }
    Ok(transmission(spec, cfg, energy)?.d)
}

/// Which of the three coincidence scenarios a full-domain level falls into:
/// the level exists in both wells (tunneling along one level), in one well
/// plus the barrier (transition inside the barrier), or only as an isolated
/// in-well box level (full reflection at the barrier face).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoincidenceCase {
    /// Matching left- and right-system levels: oscillation along the level.
    One,
    /// Present on one side only, with barrier penetration.
    Two,
    /// The nearby well level is a pure hard-box level: full reflection.
    Three,
}

#[derive(Debug, Clone)]
pub struct ClassifiedLevel {
    pub level: Level,
    pub case: CoincidenceCase,
    pub nearest_left: Option<f64>,
    pub nearest_right: Option<f64>,
    pub nearest_box: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub levels: Vec<ClassifiedLevel>,
    /// Left-well-plus-barrier system levels (wall at x = a).
    pub left_levels: Vec<f64>,
    /// Right-well-plus-barrier system levels (wall at x = −c).
    pub right_levels: Vec<f64>,
    /// Hard-box levels of region I alone: ħ²π²n²/(2m(d−c)²).
    pub box_left: Vec<f64>,
    /// Hard-box levels of region II alone, measured from its −W0 floor.
    pub box_right: Vec<f64>,
    pub match_tol: f64,
}

/// Left-well-plus-barrier residual (Dirichlet wall at x = a):
/// (χS + kC) + q(χS − kC).
fn residual_left_system(spec: &SquareWellSpec, cfg: &SolverConfig, energy: f64) -> f64 {
    let wn = match wavenumbers(spec, cfg, energy) {
        Ok(w) => w,
        Err(_) => return f64::NAN,
    };
    let (s, c) = (wn.k * spec.left_width()).sin_cos();
    let q = (-2.0 * wn.chi * spec.barrier_width()).exp();
    (wn.chi * s + wn.k * c) + q * (wn.chi * s - wn.k * c)
}

/// Mirror image: right well plus barrier, Dirichlet wall at x = −c.
fn residual_right_system(spec: &SquareWellSpec, cfg: &SolverConfig, energy: f64) -> f64 {
    let wn = match wavenumbers(spec, cfg, energy) {
        Ok(w) => w,
        Err(_) => return f64::NAN,
    };
    let (s3, c3) = (wn.k3 * spec.right_width()).sin_cos();
    let q = (-2.0 * wn.chi * spec.barrier_width()).exp();
    (wn.chi * s3 + wn.k3 * c3) + q * (wn.chi * s3 - wn.k3 * c3)
}

fn nearest(levels: &[f64], e: f64) -> Option<f64> {
    levels
        .iter()
        .copied()
        .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))
}

/// Classifies every full-domain level in (0, U0) against the per-region
/// candidate level systems.
pub fn classify_levels(
    spec: &SquareWellSpec,
    cfg: &SolverConfig,
) -> Result<ClassificationReport, SquareWellError> {
    let full = solve_spectrum_asymmetric(spec, cfg)?;
    let lo = spec.u0 * 1e-9;
    let hi = spec.u0 * (1.0 - 1e-9);
    let left_levels = find_roots(|e| residual_left_system(spec, cfg, e), lo, hi, &cfg.root);
    let right_levels = find_roots(|e| residual_right_system(spec, cfg, e), lo, hi, &cfg.root);
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let box_of = |width: f64, floor: f64| -> Vec<f64> {
        let mut out = Vec::new();
        let mut n = 1usize;
        loop {
            let e = (hbar * std::f64::consts::PI * n as f64 / width).powi(2) / (2.0 * m) + floor;
            if e >= spec.u0 {
                break;
            }
            if e > 0.0 {
                out.push(e);
            }
            n += 1;
        }
        out
    };
    let box_left = box_of(spec.left_width(), 0.0);
    let box_right = box_of(spec.right_width(), -spec.w0);
    let match_tol = cfg.match_tol_rel * spec.u0;
    let mut boxes = box_left.clone();
    boxes.extend_from_slice(&box_right);
    boxes.sort_by(f64::total_cmp);

    let levels = full
        .levels
        .iter()
        .map(|level| {
            let e = level.energy;
            let nl = nearest(&left_levels, e);
            let nr = nearest(&right_levels, e);
            let nb = nearest(&boxes, e);
            let case = match (nl, nr) {
                (Some(el), Some(er)) if (el - er).abs() <= match_tol => CoincidenceCase::One,
                _ => {
                    // The side level actually adjacent to this full level.
                    let side = match (nl, nr) {
                        (Some(el), Some(er)) => {
                            if (el - e).abs() <= (er - e).abs() {
                                el
                            } else {
                                er
                            }
                        }
                        (Some(el), None) => el,
                        (None, Some(er)) => er,
                        (None, None) => f64::NAN,
                    };
                    let boxed = nearest(&boxes, side)
                        .map(|b| (b - side).abs() <= match_tol)
                        .unwrap_or(false);
                    if side.is_nan() || boxed {
                        CoincidenceCase::Three
                    } else {
                        CoincidenceCase::Two
                    }
                }
            };
            ClassifiedLevel {
                level: *level,
                case,
                nearest_left: nl,
                nearest_right: nr,
                nearest_box: nb,
            }
        })
        .collect();

    Ok(ClassificationReport {
        levels,
        left_levels,
        right_levels,
        box_left,
        box_right,
        match_tol,
    })
}

/// f₁(k) = k(b−a) of the graphical system.
pub fn f1_line(spec: &SquareWellSpec, k: f64) -> f64 {
    k * (spec.b - spec.a)
}

/// f₂(k) = πn − arcsin(1/√(1 + (χ²/k²)T²)) of the graphical system, with
/// T = ((−1)ⁿ − e^{2χa})/((−1)ⁿ + e^{2χa}) evaluated in overflow-safe form.
pub fn f2_curve(spec: &SquareWellSpec, cfg: &SolverConfig, n: usize, k: f64) -> f64 {
    let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
    let k_max_sq = 2.0 * m * spec.u0 / (hbar * hbar);
    let chi = (k_max_sq - k * k).max(0.0).sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let em = (-2.0 * chi * spec.a).exp();
    let t = (sign * em - 1.0) / (sign * em + 1.0);
    let arg = 1.0 / (1.0 + chi * chi / (k * k) * t * t).sqrt();
    std::f64::consts::PI * n as f64 - arg.asin()
}
