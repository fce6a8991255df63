//! Solver for the double Morse well: oscillation eigenvalues from the
//! wall-to-wall matching problem, single-well reflection eigenvalues, and
//! the symmetric parity systems.
//!
//! The general solution on each side is e^{−ξ/2}[c₁ξˢF(−n,1+2s;ξ) +
//! c₂ξ^{−s}F(−n−2s,1−2s;ξ)] with ξ growing like e^{α·d} toward the wall,
//! so every residual is assembled from signed-log Kummer values. The
//! matching condition at x = 0 is evaluated two ways: the transcribed
//! eigenvalue equation (ratio form) and an independently derived 2×2
//! continuity determinant; the determinant is the authority and the two
//! are cross-checked in the tests.

use crate::config::SolverConfig;
use crate::numerics::{find_roots, integrate, kummer_m_log_path, EvalPath, LogVal, NumericsError};
use crate::potential::{Level, MorseSpec, Parity, PotentialSpec, Spectrum, Well};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MorseError {
    #[error("2s = {two_s} within the guard band of an integer; the logarithmic solution family is out of scope")]
    DegenerateParameter { two_s: f64 },
    #[error("no bound states found in the scan range")]
    NoBoundStates,
    #[error("energy {energy} is not an eigenvalue (residual {residual:e})")]
    NotAnEigenvalue { energy: f64, residual: f64 },
    #[error("operation requires the symmetric configuration")]
    NotSymmetric,
    #[error("energy {0} outside the bound-state range")]
    Domain(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// The dimensionless parameters of both wells at one energy.
#[derive(Debug, Clone, Copy)]
pub struct MorseParams {
    pub s_a: f64,
    pub s_b: f64,
    pub n_a: f64,
    pub n_b: f64,
    pub xi_a0: f64,
    pub xi_b0: f64,
    /// Wall-condition amplitude ratios; may overflow to ±∞ for deep walls.
    pub c1a_over_c2a: f64,
    pub c1b_over_c2b: f64,
}

impl MorseParams {
    pub fn at_energy(
        spec: &MorseSpec,
        cfg: &SolverConfig,
        energy: f64,
    ) -> Result<Self, MorseError> {
        let left = SideGeometry::left(spec).params(cfg, energy)?;
        let right = SideGeometry::right(spec).params(cfg, energy)?;
        let ratio = |side: &SideParams| -> Result<f64, MorseError> {
            let (f1w, f2w) = side.wall_values(EvalPath::Auto)?;
            let r = f2w
                .mul(LogVal {
                    ln: -2.0 * side.s * side.xi_wall.ln(),
                    sign: -1.0,
                })
                .mul(LogVal {
                    ln: -f1w.ln,
                    sign: f1w.sign,
                });
            Ok(r.value())
        };
        Ok(MorseParams {
            s_a: left.s,
            s_b: right.s,
            n_a: left.n,
            n_b: right.n,
            xi_a0: left.xi0,
            xi_b0: right.xi0,
            c1a_over_c2a: ratio(&left)?,
            c1b_over_c2b: ratio(&right)?,
        })
    }
}

/// One well's geometry, oriented so ξ shrinks toward x = 0.
#[derive(Debug, Clone, Copy)]
struct SideGeometry {
    depth: f64,
    rate: f64,
    /// Distance from x = 0 to the well minimum.
    min_offset: f64,
    /// Distance from x = 0 to the hard wall.
    wall: f64,
    /// dξ/dx = orientation · rate · ξ.
    orientation: f64,
}

impl SideGeometry {
    fn left(spec: &MorseSpec) -> Self {
        Self {
            depth: spec.depth_left,
            rate: spec.alpha,
            min_offset: spec.c,
            wall: spec.d,
            orientation: -1.0,
        }
    }

    fn right(spec: &MorseSpec) -> Self {
        Self {
            depth: spec.depth_right,
            rate: spec.beta,
            min_offset: spec.a,
            wall: spec.b,
            orientation: 1.0,
        }
    }

    fn params(&self, cfg: &SolverConfig, energy: f64) -> Result<SideParams, MorseError> {
        if energy >= 0.0 || energy <= -self.depth {
            return Err(MorseError::Domain(energy));
        }
        let (hbar, m) = (cfg.phys.hbar, cfg.phys.mass);
        let s = (-2.0 * m * energy).sqrt() / (self.rate * hbar);
        let two_s = 2.0 * s;
        if (two_s - two_s.round()).abs() < cfg.degenerate_guard && two_s.round() >= 1.0 {
            return Err(MorseError::DegenerateParameter { two_s });
        }
        let strength = (2.0 * m * self.depth).sqrt() / (self.rate * hbar);
        let n = strength - (s + 0.5);
        let xi0 = 2.0 * strength * (-self.rate * self.min_offset).exp();
        Ok(SideParams {
            s,
            n,
            xi0,
            xi_wall: xi0 * (self.rate * self.wall).exp(),
            rate: self.rate,
            orientation: self.orientation,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct SideParams {
    s: f64,
    n: f64,
    xi0: f64,
    xi_wall: f64,
    rate: f64,
    orientation: f64,
}

fn pow_log(base: f64, exponent: f64) -> LogVal {
    LogVal {
        ln: exponent * base.ln(),
        sign: 1.0,
    }
}

impl SideParams {
    fn f1(&self, xi: f64, path: EvalPath) -> Result<LogVal, NumericsError> {
        kummer_m_log_path(-self.n, 1.0 + 2.0 * self.s, xi, path)
    }

    fn f2(&self, xi: f64, path: EvalPath) -> Result<LogVal, NumericsError> {
        kummer_m_log_path(-self.n - 2.0 * self.s, 1.0 - 2.0 * self.s, xi, path)
    }

    /// dF/dξ = (a/c)·F(a+1, c+1; ξ) for each branch.
    fn df1(&self, xi: f64, path: EvalPath) -> Result<LogVal, NumericsError> {
        let a = -self.n;
        let c = 1.0 + 2.0 * self.s;
        let m = kummer_m_log_path(a + 1.0, c + 1.0, xi, path)?;
        Ok(m.mul(LogVal::from_value(a / c)))
    }

    fn df2(&self, xi: f64, path: EvalPath) -> Result<LogVal, NumericsError> {
        let a = -self.n - 2.0 * self.s;
        let c = 1.0 - 2.0 * self.s;
        let m = kummer_m_log_path(a + 1.0, c + 1.0, xi, path)?;
        Ok(m.mul(LogVal::from_value(a / c)))
    }

    fn wall_values(&self, path: EvalPath) -> Result<(LogVal, LogVal), NumericsError> {
        Ok((self.f1(self.xi_wall, path)?, self.f2(self.xi_wall, path)?))
    }

    /// Wall-normalized coefficients (c₁, c₂) = (ξ_w^{−s}F₂(ξ_w),
    /// −ξ_w^{s}F₁(ξ_w)), annihilating φ at the wall.
    fn wall_coefficients(&self, path: EvalPath) -> Result<(LogVal, LogVal), NumericsError> {
        let (f1w, f2w) = self.wall_values(path)?;
        let c1 = pow_log(self.xi_wall, -self.s).mul(f2w);
        let c2 = pow_log(self.xi_wall, self.s).mul(f1w).mul(LogVal::from_value(-1.0));
        Ok((c1, c2))
    }

    /// φ-bracket (without the common e^{−ξ/2}) at ξ, for given (c₁, c₂).
    fn phi_bracket(
        &self,
        c1: LogVal,
        c2: LogVal,
        xi: f64,
        path: EvalPath,
    ) -> Result<LogVal, NumericsError> {
        let t1 = c1.mul(pow_log(xi, self.s)).mul(self.f1(xi, path)?);
        let t2 = c2.mul(pow_log(xi, -self.s)).mul(self.f2(xi, path)?);
        Ok(t1.add(t2))
    }

    /// d/dξ of e^{−ξ/2}·(φ-bracket), with the e^{−ξ/2} factored out:
    /// c₁ξˢ[(s/ξ − ½)F₁ + F₁′] + c₂ξ^{−s}[(−s/ξ − ½)F₂ + F₂′].
    fn dphi_dxi_bracket(
        &self,
        c1: LogVal,
        c2: LogVal,
        xi: f64,
        path: EvalPath,
    ) -> Result<LogVal, NumericsError> {
        let g1 = self
            .f1(xi, path)?
            .mul(LogVal::from_value(self.s / xi - 0.5))
            .add(self.df1(xi, path)?);
        let g2 = self
            .f2(xi, path)?
            .mul(LogVal::from_value(-self.s / xi - 0.5))
            .add(self.df2(xi, path)?);
        let t1 = c1.mul(pow_log(xi, self.s)).mul(g1);
        let t2 = c2.mul(pow_log(xi, -self.s)).mul(g2);
        Ok(t1.add(t2))
    }

    /// (φ(0), dφ/dx(0)) brackets of the wall-normalized solution.
    fn origin_state(&self, path: EvalPath) -> Result<(LogVal, LogVal), NumericsError> {
        let (c1, c2) = self.wall_coefficients(path)?;
        let phi = self.phi_bracket(c1, c2, self.xi0, path)?;
        let dphi_dxi = self.dphi_dxi_bracket(c1, c2, self.xi0, path)?;
        let dphi_dx = dphi_dxi.mul(LogVal::from_value(self.orientation * self.rate * self.xi0));
        Ok((phi, dphi_dx))
    }
}

fn normalized_difference(p: LogVal, q: LogVal) -> f64 {
    if p.sign == 0.0 && q.sign == 0.0 {
        return 0.0;
    }
    let m = p.ln.max(q.ln);
    let rp = p.sign * (p.ln - m).exp();
    let rq = q.sign * (q.ln - m).exp();
    (rp - rq) / (rp.abs() + rq.abs())
}

pub(crate) fn matching_determinant_path(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    energy: f64,
    path: EvalPath,
) -> Result<f64, MorseError> {
    let left = SideGeometry::left(spec).params(cfg, energy)?;
    let right = SideGeometry::right(spec).params(cfg, energy)?;
    let (phi_a, dphi_a) = left.origin_state(path)?;
    let (phi_b, dphi_b) = right.origin_state(path)?;
    // det = φ_A·φ_B′ − φ_B·φ_A′, scaled into [−1, 1].
    Ok(normalized_difference(
        phi_a.mul(dphi_b),
        phi_b.mul(dphi_a),
    ))
}

/// Continuity determinant at x = 0 for the oscillation problem; zero
/// exactly at the wall-to-wall eigenvalues. Scaled into [−1, 1].
pub fn matching_determinant(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<f64, MorseError> {
    matching_determinant_path(spec, cfg, energy, EvalPath::Auto)
}

/// The transcribed eigenvalue equation in its ratio form, normalized to
/// [−1, 1]. Carries poles where the wall value F(−n_A, 1+2s_A; ξ_Ad)
/// vanishes; the determinant form is the solver's authority.
pub fn residual_oscillation(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<f64, MorseError> {
    let left = SideGeometry::left(spec).params(cfg, energy)?;
    let right = SideGeometry::right(spec).params(cfg, energy)?;
    let path = EvalPath::Auto;
    let ratio = |side: &SideParams| -> Result<LogVal, MorseError> {
        let (f1w, f2w) = side.wall_values(path)?;
        Ok(pow_log(side.xi_wall, -2.0 * side.s)
            .mul(f2w)
            .mul(LogVal {
                ln: -f1w.ln,
                sign: f1w.sign,
            })
            .mul(LogVal::from_value(-1.0)))
    };
    let ratio_a = ratio(&left)?;
    let ratio_b = ratio(&right)?;
    let phi_bracket = |side: &SideParams, r: LogVal| -> Result<LogVal, MorseError> {
        let t1 = r
            .mul(pow_log(side.xi0, side.s))
            .mul(side.f1(side.xi0, path)?);
        let t2 = pow_log(side.xi0, -side.s).mul(side.f2(side.xi0, path)?);
        Ok(t1.add(t2))
    };
    let d_bracket = |side: &SideParams, r: LogVal| -> Result<LogVal, MorseError> {
        let g1 = side
            .f1(side.xi0, path)?
            .mul(LogVal::from_value(side.s / side.xi0 - 0.5))
            .add(side.df1(side.xi0, path)?);
        let g2 = side
            .f2(side.xi0, path)?
            .mul(LogVal::from_value(-side.s / side.xi0 - 0.5))
            .add(side.df2(side.xi0, path)?);
        let t1 = r.mul(pow_log(side.xi0, side.s)).mul(g1);
        let t2 = pow_log(side.xi0, -side.s).mul(g2);
        Ok(t1.add(t2))
    };
    let prefactor = LogVal::from_value(
        -(spec.alpha * left.xi0) / (spec.beta * right.xi0),
    );
    let lhs = prefactor
        .mul(phi_bracket(&right, ratio_b)?)
        .mul(d_bracket(&left, ratio_a)?);
    let rhs = d_bracket(&right, ratio_b)?.mul(phi_bracket(&left, ratio_a)?);
    Ok(normalized_difference(lhs, rhs))
}

fn scan_range(spec: &MorseSpec) -> (f64, f64) {
    let depth = spec.depth_left.min(spec.depth_right);
    (-0.999 * depth, -1e-9 * depth)
}

fn scan_residual_roots<F>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Vec<f64>
where
    F: Fn(f64) -> Result<f64, MorseError>,
{
    let roots = find_roots(
        |e| match f(e) {
            Ok(r) => r,
            // NaN cells (guard bands, domain edges) never bracket.
            Err(_) => f64::NAN,
        },
        lo,
        hi,
        &cfg.root,
    );
    let guard_note = |e: f64| {
        log::warn!("root near E = {e} sits by a 2s ∈ ℤ guard band; treat with care");
    };
    for &e in &roots {
        if f(e).is_err() {
            guard_note(e);
        }
    }
    roots
}

/// Eigenvalues of particle oscillation between the wells: roots of the
/// matching determinant over (−0.999·min(A,B), 0).
pub fn solve_oscillation_spectrum(
    spec: &MorseSpec,
    cfg: &SolverConfig,
) -> Result<Spectrum, MorseError> {
    let (lo, hi) = scan_range(spec);
    let roots = scan_residual_roots(|e| matching_determinant(spec, cfg, e), lo, hi, cfg);
    if roots.is_empty() {
        return Err(MorseError::NoBoundStates);
    }
    let levels = roots
        .into_iter()
        .map(|energy| Level {
            energy,
            index: 0,
            parity: Parity::None,
            well: Well::Both,
        })
        .collect();
    Ok(Spectrum::from_levels(
        levels,
        PotentialSpec::MorsePair(*spec),
    ))
}

/// Single-well reflection equation: e^{2s·rate·wall}·F₂(ξ₀)F₁(ξ_w) =
/// F₂(ξ_w)F₁(ξ₀), normalized to [−1, 1].
fn residual_single_side(side: &SideParams) -> Result<f64, MorseError> {
    let path = EvalPath::Auto;
    let (f1w, f2w) = side.wall_values(path)?;
    let p = f2w.mul(side.f1(side.xi0, path)?);
    let q = LogVal {
        ln: 2.0 * side.s * side.rate * (side.xi_wall / side.xi0).ln() / side.rate,
        sign: 1.0,
    }
    .mul(side.f2(side.xi0, path)?)
    .mul(f1w);
    Ok(normalized_difference(q, p))
}

/// Left-well reflection residual (condition φ_A(−d) = 0, φ_A(0) = 0).
pub fn residual_left_well(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<f64, MorseError> {
    let side = SideGeometry::left(spec).params(cfg, energy)?;
    residual_single_side(&side)
}

/// Right-well reflection residual (condition φ_B(0) = 0, φ_B(b) = 0).
pub fn residual_right_well(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    energy: f64,
) -> Result<f64, MorseError> {
    let side = SideGeometry::right(spec).params(cfg, energy)?;
    residual_single_side(&side)
}

/// Single-well spectrum with levels that also solve the opposite well's
/// equation separated out: those correspond to oscillation states and are
/// excluded from the in-one-well analysis.
#[derive(Debug, Clone)]
pub struct SingleWellSpectrum {
    pub well: Well,
    pub exclusive: Vec<Level>,
    /// Energies excluded because the other well supports them too.
    pub shared: Vec<f64>,
}

fn solve_single_well(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    well: Well,
) -> Result<SingleWellSpectrum, MorseError> {
    let (own_depth, own, other): (f64, _, _) = match well {
        Well::Left => (
            spec.depth_left,
            residual_left_well as fn(&MorseSpec, &SolverConfig, f64) -> Result<f64, MorseError>,
            residual_right_well as fn(&MorseSpec, &SolverConfig, f64) -> Result<f64, MorseError>,
        ),
        Well::Right => (
            spec.depth_right,
            residual_right_well,
            residual_left_well,
        ),
        Well::Both => return Err(MorseError::NotSymmetric),
    };
    let lo = -0.999 * own_depth;
    let hi = -1e-9 * own_depth;
    let roots = scan_residual_roots(|e| own(spec, cfg, e), lo, hi, cfg);
    if roots.is_empty() {
        return Err(MorseError::NoBoundStates);
    }
    let other_depth = match well {
        Well::Left => spec.depth_right,
        _ => spec.depth_left,
    };
    let other_roots = scan_residual_roots(
        |e| other(spec, cfg, e),
        -0.999 * other_depth,
        -1e-9 * other_depth,
        cfg,
    );
    let tol = 1e-8 * own_depth.max(other_depth);
    let mut exclusive = Vec::new();
    let mut shared = Vec::new();
    for e in roots {
        let coincides = other_roots.iter().any(|o| (o - e).abs() <= tol);
        if coincides {
            shared.push(e);
        } else {
            exclusive.push(Level {
                energy: e,
                index: 0,
                parity: Parity::None,
                well,
            });
        }
    }
    for (i, level) in exclusive.iter_mut().enumerate() {
        level.index = i;
    }
    Ok(SingleWellSpectrum {
        well,
        exclusive,
        shared,
    })
}

/// Levels of a particle confined to the left well by reflection at the
/// barrier midpoint.
pub fn solve_left_well(
    spec: &MorseSpec,
    cfg: &SolverConfig,
) -> Result<SingleWellSpectrum, MorseError> {
    solve_single_well(spec, cfg, Well::Left)
}

/// Mirror operation for the right well.
pub fn solve_right_well(
    spec: &MorseSpec,
    cfg: &SolverConfig,
) -> Result<SingleWellSpectrum, MorseError> {
    solve_single_well(spec, cfg, Well::Right)
}

/// Antinode-at-origin residual for the symmetric case: φ(−d) = 0 together
/// with φ′(0) = 0.
fn residual_antinode(spec: &MorseSpec, cfg: &SolverConfig, energy: f64) -> Result<f64, MorseError> {
    let side = SideGeometry::left(spec).params(cfg, energy)?;
    let path = EvalPath::Auto;
    let (c1, c2) = side.wall_coefficients(path)?;
    let g1 = side
        .f1(side.xi0, path)?
        .mul(LogVal::from_value(side.s / side.xi0 - 0.5))
        .add(side.df1(side.xi0, path)?);
    let g2 = side
        .f2(side.xi0, path)?
        .mul(LogVal::from_value(-side.s / side.xi0 - 0.5))
        .add(side.df2(side.xi0, path)?);
    let p = c1.mul(pow_log(side.xi0, side.s)).mul(g1);
    let q = c2
        .mul(pow_log(side.xi0, -side.s))
        .mul(g2)
        .mul(LogVal::from_value(-1.0));
    Ok(normalized_difference(p, q))
}

/// Symmetric-case spectrum from the two parity boundary systems,
/// φ′(0) = 0 (even states) and φ(0) = 0 (odd states).
///
/// The source analysis labels the φ(0) = 0 family "even", the reverse of
/// the convention here; parity tags below follow the wavefunction symmetry
/// that the oracle confirms (nodeless ground state in the φ′(0) = 0
/// family).
pub fn solve_symmetric_parity(
    spec: &MorseSpec,
    cfg: &SolverConfig,
) -> Result<Spectrum, MorseError> {
    if !spec.is_symmetric() {
        return Err(MorseError::NotSymmetric);
    }
    let (lo, hi) = scan_range(spec);
    let mut levels = Vec::new();
    let even_roots = scan_residual_roots(|e| residual_antinode(spec, cfg, e), lo, hi, cfg);
    for e in even_roots {
        levels.push(Level {
            energy: e,
            index: 0,
            parity: Parity::Even,
            well: Well::Both,
        });
    }
    let odd_roots = scan_residual_roots(|e| residual_left_well(spec, cfg, e), lo, hi, cfg);
    for e in odd_roots {
        levels.push(Level {
            energy: e,
            index: 0,
            parity: Parity::Odd,
            well: Well::Both,
        });
    }
    if levels.is_empty() {
        return Err(MorseError::NoBoundStates);
    }
    Ok(Spectrum::from_levels(
        levels,
        PotentialSpec::MorsePair(*spec),
    ))
}

/// Reconstructed wavefunction of a solved oscillation level. Coefficients
/// are stored in signed-log form; the f64 views may over/underflow for
/// very opaque walls.
#[derive(Debug, Clone)]
pub struct MorseWavefunction {
    pub level: Level,
    c1a: LogVal,
    c2a: LogVal,
    c1b: LogVal,
    c2b: LogVal,
    left: SideParams,
    right: SideParams,
    /// Normalized continuity mismatch at x = 0 diagnosed at construction.
    pub matching_residual: f64,
    spec: MorseSpec,
}

impl MorseWavefunction {
    pub fn c1a(&self) -> f64 {
        self.c1a.value()
    }
    pub fn c2a(&self) -> f64 {
        self.c2a.value()
    }
    pub fn c1b(&self) -> f64 {
        self.c1b.value()
    }
    pub fn c2b(&self) -> f64 {
        self.c2b.value()
    }

    pub fn eval(&self, x: f64) -> Result<f64, MorseError> {
        let s = &self.spec;
        if x < -s.d || x > s.b {
            return Err(MorseError::Domain(x));
        }
        let path = EvalPath::Auto;
        let v = if x < 0.0 {
            let xi = self.left.xi0 * (-s.alpha * x).exp();
            self.left
                .phi_bracket(self.c1a, self.c2a, xi, path)?
                .scale_exp(-0.5 * xi)
        } else {
            let xi = self.right.xi0 * (s.beta * x).exp();
            self.right
                .phi_bracket(self.c1b, self.c2b, xi, path)?
                .scale_exp(-0.5 * xi)
        };
        Ok(v.value())
    }
}

/// Builds and normalizes the wavefunction of an oscillation level.
pub fn wavefunction(
    spec: &MorseSpec,
    cfg: &SolverConfig,
    level: &Level,
) -> Result<MorseWavefunction, MorseError> {
    let energy = level.energy;
    let residual = matching_determinant(spec, cfg, energy)?.abs();
    if residual > 1e-6 {
        return Err(MorseError::NotAnEigenvalue { energy, residual });
    }
    let path = EvalPath::Auto;
    let left = SideGeometry::left(spec).params(cfg, energy)?;
    let right = SideGeometry::right(spec).params(cfg, energy)?;
    let (c1a, c2a) = left.wall_coefficients(path)?;
    let (c1b, c2b) = right.wall_coefficients(path)?;
    let (phi_a, dphi_a) = left.origin_state(path)?;
    let (phi_b, dphi_b) = right.origin_state(path)?;
    // Scale the right side onto the left, using value continuity unless
    // x = 0 is (numerically) a node.
    let scale = if phi_a.ln - dphi_a.ln > -5.0 {
        phi_a.mul(LogVal {
            ln: -phi_b.ln,
            sign: phi_b.sign,
        })
    } else {
        dphi_a.mul(LogVal {
            ln: -dphi_b.ln,
            sign: dphi_b.sign,
        })
    };
    let mut wf = MorseWavefunction {
        level: *level,
        c1a,
        c2a,
        c1b: c1b.mul(scale),
        c2b: c2b.mul(scale),
        left,
        right,
        matching_residual: residual,
        spec: *spec,
    };
    // Rebase the stored logs so plain-f64 evaluation stays in range, then
    // normalize by quadrature over the finite domain.
    let mut peak = f64::NEG_INFINITY;
    for i in 0..=64 {
        let x = -spec.d + (spec.b + spec.d) * i as f64 / 64.0;
        let xi;
        let bracket = if x < 0.0 {
            xi = wf.left.xi0 * (-spec.alpha * x).exp();
            wf.left.phi_bracket(wf.c1a, wf.c2a, xi, path)?
        } else {
            xi = wf.right.xi0 * (spec.beta * x).exp();
            wf.right.phi_bracket(wf.c1b, wf.c2b, xi, path)?
        };
        peak = peak.max(bracket.ln - 0.5 * xi);
    }
    for c in [&mut wf.c1a, &mut wf.c2a, &mut wf.c1b, &mut wf.c2b] {
        *c = c.scale_exp(-peak);
    }
    let norm_sq = integrate(
        |x| {
            let v = wf.eval(x).unwrap_or(0.0);
            v * v
        },
        -spec.d,
        spec.b,
        cfg.quad_tol.max(1e-9),
    )?;
    let rescale = LogVal::from_value(norm_sq.sqrt().recip());
    for c in [&mut wf.c1a, &mut wf.c2a, &mut wf.c1b, &mut wf.c2b] {
        *c = c.mul(rescale);
    }
    Ok(wf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PhysConfig;
    use crate::oracle::{self, GridProblem};

    fn cfg() -> SolverConfig {
        SolverConfig::default().with_scan_points(6000)
    }

    /// Moderate symmetric configuration: wall arguments ξ_w ≈ 22, safely
    /// inside the plain-evaluation regime.
    fn moderate() -> MorseSpec {
        MorseSpec::symmetric(4.0, 1.2, 1.0, 2.3).unwrap()
    }

    #[test]
    fn parameter_relations() {
        let spec = MorseSpec::new(9.0, 4.0, 1.3, 0.8, 1.1, 1.4, 4.0, 5.0).unwrap();
        let c = cfg();
        let p = MorseParams::at_energy(&spec, &c, -2.5).unwrap();
        assert!((p.s_b - spec.alpha / spec.beta * p.s_a).abs() < 1e-13);
        // n_B from the cross-well relation.
        let expect = spec.alpha / spec.beta
            * (spec.depth_right / spec.depth_left).sqrt()
            * (p.n_a + p.s_a + 0.5)
            - (spec.alpha / spec.beta * p.s_a + 0.5);
        assert!((p.n_b - expect).abs() < 1e-12, "{} vs {expect}", p.n_b);
    }

    #[test]
    fn degenerate_guard_trips() {
        let spec = moderate();
        let c = cfg();
        // 2s_A = 3 ⇔ E = −(1.5·α·ħ)²/(2m).
        let e = -(1.5 * spec.alpha).powi(2) / 2.0;
        assert!(matches!(
            residual_oscillation(&spec, &c, e),
            Err(MorseError::DegenerateParameter { .. })
        ));
        assert!(residual_oscillation(&spec, &c, e * 1.01).is_ok());
    }

    #[test]
    fn oscillation_spectrum_matches_oracle() {
        let spec = moderate();
        let c = cfg();
        let spectrum = solve_oscillation_spectrum(&spec, &c).unwrap();
        assert!(spectrum.levels.len() >= 2, "{:?}", spectrum.energies());
        let phys = PhysConfig::default();
        let problem = GridProblem::for_potential(&PotentialSpec::MorsePair(spec), &phys, 6);
        let oracle = oracle::solve_grid(&problem, spectrum.levels.len().min(6), &phys).unwrap();
        for (level, ol) in spectrum.levels.iter().zip(&oracle.levels) {
            let rel = (level.energy - ol.energy).abs() / ol.energy.abs();
            assert!(
                rel < 1e-3,
                "level {} vs oracle {} (rel {rel:e})",
                level.energy,
                ol.energy
            );
        }
    }

    #[test]
    fn residual_vanishes_and_flips_sign_at_roots() {
        let spec = moderate();
        let c = cfg();
        let spectrum = solve_oscillation_spectrum(&spec, &c).unwrap();
        for level in &spectrum.levels {
            let r = matching_determinant(&spec, &c, level.energy).unwrap();
            assert!(r.abs() < 1e-8, "residual {r:e} at {}", level.energy);
            let h = 1e-6 * level.energy.abs();
            let below = matching_determinant(&spec, &c, level.energy - h).unwrap();
            let above = matching_determinant(&spec, &c, level.energy + h).unwrap();
            assert!(below * above < 0.0, "no sign change at {}", level.energy);
        }
    }

    #[test]
    fn transcribed_equation_and_determinant_agree_on_roots() {
        let spec = moderate();
        let c = cfg();
        let (lo, hi) = scan_range(&spec);
        let det_roots = scan_residual_roots(|e| matching_determinant(&spec, &c, e), lo, hi, &c);
        let lit_roots = scan_residual_roots(|e| residual_oscillation(&spec, &c, e), lo, hi, &c);
        assert_eq!(det_roots.len(), lit_roots.len());
        for (d, l) in det_roots.iter().zip(&lit_roots) {
            assert!(
                (d - l).abs() < 1e-8,
                "determinant root {d} vs transcription root {l}"
            );
        }
    }

    #[test]
    fn kummer_path_invariance_of_roots() {
        let spec = moderate();
        let c = cfg();
        let (lo, hi) = scan_range(&spec);
        let auto = scan_residual_roots(
            |e| matching_determinant_path(&spec, &c, e, EvalPath::Auto),
            lo,
            hi,
            &c,
        );
        let forced = scan_residual_roots(
            |e| matching_determinant_path(&spec, &c, e, EvalPath::ForceTransform),
            lo,
            hi,
            &c,
        );
        assert_eq!(auto.len(), forced.len());
        for (a, f) in auto.iter().zip(&forced) {
            assert!((a - f).abs() < 1e-9, "{a} vs {f}");
        }
    }

    #[test]
    fn symmetric_single_wells_fully_shared() {
        let spec = moderate();
        let c = cfg();
        let left = solve_left_well(&spec, &c).unwrap();
        let right = solve_right_well(&spec, &c).unwrap();
        assert!(left.exclusive.is_empty(), "{:?}", left.exclusive);
        assert!(right.exclusive.is_empty());
        assert_eq!(left.shared.len(), right.shared.len());
        for (l, r) in left.shared.iter().zip(&right.shared) {
            assert!((l - r).abs() < 1e-10);
        }
    }

    #[test]
    fn asymmetric_left_well_keeps_deep_levels() {
        let spec = MorseSpec::new(30.0, 5.0, 1.5, 1.5, 1.2, 1.2, 3.0, 3.0).unwrap();
        let c = cfg();
        let left = solve_left_well(&spec, &c).unwrap();
        assert!(
            !left.exclusive.is_empty(),
            "expected exclusive left levels, shared = {:?}",
            left.shared
        );
        // Every exclusive left level matches the half-domain oracle with a
        // Dirichlet wall at x = 0.
        let phys = PhysConfig::default();
        let m = spec;
        let problem = GridProblem::new(-m.d, 0.0, 4000, move |x| {
            let e = (-m.alpha * (x + m.c)).exp();
            m.depth_left * (e * e - 2.0 * e)
        });
        let oracle = oracle::solve_grid(&problem, 8, &phys).unwrap();
        for level in &left.exclusive {
            let nearest = oracle
                .energies()
                .iter()
                .map(|e| (e - level.energy).abs() / level.energy.abs())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-3, "level {} rel off {nearest}", level.energy);
        }
    }

    #[test]
    fn parity_families_union_is_oscillation_spectrum() {
        let spec = moderate();
        let c = cfg();
        let parity = solve_symmetric_parity(&spec, &c).unwrap();
        let osc = solve_oscillation_spectrum(&spec, &c).unwrap();
        assert_eq!(parity.levels.len(), osc.levels.len());
        for (p, o) in parity.levels.iter().zip(&osc.levels) {
            assert!(
                (p.energy - o.energy).abs() < 1e-8,
                "{} vs {}",
                p.energy,
                o.energy
            );
        }
        // Ground state is the antinode (even) family, and doublets order
        // even below odd.
        assert_eq!(parity.levels[0].parity, Parity::Even);
        let phys = PhysConfig::default();
        let problem = GridProblem::for_potential(&PotentialSpec::MorsePair(spec), &phys, 4);
        for (i, level) in parity.levels.iter().take(4).enumerate() {
            let oracle_parity = oracle::parity_of_state(&problem, i, &phys).unwrap();
            assert_eq!(level.parity, oracle_parity, "level {i}");
        }
    }

    #[test]
    fn splitting_shrinks_as_wells_separate() {
        let c = cfg();
        let phys = PhysConfig::default();
        let mut prev_gap = f64::INFINITY;
        for sep in [1.0, 1.3, 1.6] {
            let spec = MorseSpec::symmetric(4.0, 1.2, sep, sep + 1.3).unwrap();
            let spectrum = solve_oscillation_spectrum(&spec, &c).unwrap();
            assert!(spectrum.levels.len() >= 2);
            let gap = spectrum.levels[1].energy - spectrum.levels[0].energy;
            assert!(gap > 0.0 && gap < prev_gap, "gap {gap} at sep {sep}");
            // The oracle sees the same doublet gap.
            let problem = GridProblem::for_potential(&PotentialSpec::MorsePair(spec), &phys, 2);
            let oracle = oracle::solve_grid(&problem, 2, &phys).unwrap();
            let oracle_gap = oracle.levels[1].energy - oracle.levels[0].energy;
            assert!(
                (gap - oracle_gap).abs() < 1e-3 * gap.max(oracle_gap),
                "gap {gap} vs oracle {oracle_gap}"
            );
            prev_gap = gap;
        }
    }

    #[test]
    fn wavefunction_invariants() {
        let spec = moderate();
        let c = cfg();
        let spectrum = solve_oscillation_spectrum(&spec, &c).unwrap();
        for level in spectrum.levels.iter().take(3) {
            let wf = wavefunction(&spec, &c, level).unwrap();
            assert!(wf.matching_residual < 1e-8);
            // Hard-wall zeros relative to the O(1) normalized amplitude.
            assert!(wf.eval(-spec.d).unwrap().abs() < 1e-8, "left wall");
            assert!(wf.eval(spec.b).unwrap().abs() < 1e-8, "right wall");
            // Unit norm via quadrature.
            let norm = integrate(
                |x| {
                    let v = wf.eval(x).unwrap();
                    v * v
                },
                -spec.d,
                spec.b,
                1e-9,
            )
            .unwrap();
            assert!((norm - 1.0).abs() < 1e-6, "norm {norm}");
            // Value continuity across the junction.
            let below = wf.eval(-1e-9).unwrap();
            let above = wf.eval(1e-9).unwrap();
            assert!((below - above).abs() < 1e-6, "{below} vs {above}");
        }
    }

    #[test]
    fn rejects_non_eigenvalue() {
        let spec = moderate();
        let level = Level {
            energy: -1.234,
            index: 0,
            parity: Parity::None,
            well: Well::Both,
        };
        assert!(matches!(
            wavefunction(&spec, &cfg(), &level),
            Err(MorseError::NotAnEigenvalue { .. })
        ));
    }
}
