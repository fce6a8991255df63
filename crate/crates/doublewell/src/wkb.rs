//! Semiclassical barrier machinery — action integral, level splitting,
//! transmission — and the closed-form treatment of the glued-parabola
//! double well (Hermite/erf splitting).

use crate::config::SolverConfig;
use crate::numerics::{erf, hermite, integrate, NumericsError};
use crate::potential::{MorseSpec, ParabolicSpec, PotentialSpec};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WkbError {
    #[error("turning-point structure invalid: {0}")]
    TurningPoint(String),
    #[error("normalization bracket non-positive: {0}")]
    Normalization(String),
    #[error("energy {0} outside the semiclassical window")]
    Domain(f64),
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

/// Everything the splitting/transmission formulas need at one level:
/// the inner turning points, the barrier action, the classical one-well
/// frequency and the barrier-top velocity scale.
#[derive(Debug, Clone, Copy)]
pub struct WkbContext {
    pub e0: f64,
    pub x_left: f64,
    pub x_right: f64,
    /// (1/ħ)∫|p|dx across the barrier.
    pub action: f64,
    /// 2π / (classical one-well period at e0).
    pub w_classical: f64,
    /// √(2(U_top − e0)/m).
    pub v0: f64,
}

/// Classical one-well period 2∮dx/v with both endpoints being genuine
/// turning points, regularized by the substitution x = x_t ± u².
fn classical_period<U: Fn(f64) -> f64>(
    u_of_x: U,
    e0: f64,
    mass: f64,
    x1: f64,
    x2: f64,
    x_min: f64,
    tol: f64,
) -> Result<f64, WkbError> {
    let v = |x: f64| (2.0 * (e0 - u_of_x(x)).max(0.0) / mass).sqrt();
    let left = {
        let u1 = (x_min - x1).sqrt();
        integrate(
            |u| {
                let x = x1 + u * u;
                2.0 * u / v(x).max(1e-300)
            },
            0.0,
            u1,
            tol,
        )?
    };
    let right = {
        let u2 = (x2 - x_min).sqrt();
        integrate(
            |u| {
                let x = x2 - u * u;
                2.0 * u / v(x).max(1e-300)
            },
            0.0,
            u2,
            tol,
        )?
    };
    Ok(2.0 * (left + right))
}

/// Builds the WKB context for a level E0 below the inter-well barrier.
pub fn wkb_action(
    spec: &PotentialSpec,
    cfg: &SolverConfig,
    e0: f64,
) -> Result<WkbContext, WkbError> {
    let (hbar, mass) = (cfg.phys.hbar, cfg.phys.mass);
    let tol = cfg.quad_tol;
    match spec {
        PotentialSpec::SquareWell(s) => {
            if !(e0 > 0.0 && e0 < s.u0) {
                return Err(WkbError::Domain(e0));
            }
            let chi = (2.0 * mass * (s.u0 - e0)).sqrt() / hbar;
            // |p| is constant across the barrier: action in closed form,
            // classical bouncing period from the left well.
            let v = (2.0 * e0 / mass).sqrt();
            let period = 2.0 * s.left_width() / v;
            Ok(WkbContext {
                e0,
                x_left: -s.c,
                x_right: s.a,
                action: chi * s.barrier_width(),
                w_classical: 2.0 * PI / period,
                v0: (2.0 * (s.u0 - e0) / mass).sqrt(),
            })
        }
        PotentialSpec::ParabolicPair(p) => {
            let top = 0.5 * mass * p.w * p.w * p.a * p.a;
            if !(e0 > 0.0 && e0 < top) {
                return Err(WkbError::Domain(e0));
            }
            let x_t = p.a - (2.0 * e0 / mass).sqrt() / p.w;
            let u = |x: f64| parabolic_u(p, mass, x);
            let action = integrate(
                |x| (2.0 * mass * (u(x) - e0).max(0.0)).sqrt(),
                -x_t,
                x_t,
                tol,
            )? / hbar;
            Ok(WkbContext {
                e0,
                x_left: -x_t,
                x_right: x_t,
                // Harmonic wells: the classical frequency is w itself.
                w_classical: p.w,
                action,
                v0: (2.0 * (top - e0) / mass).sqrt(),
            })
        }
        PotentialSpec::MorsePair(m) => morse_context(m, cfg, e0),
        PotentialSpec::InvSquare(s) => Err(WkbError::TurningPoint(if s.b_param > 0.0 {
            "the x² + B²/x² barrier is singular at x = 0; its action diverges".into()
        } else {
            "B = 0 is a single well with no inter-well barrier".into()
        })),
    }
}

fn parabolic_u(p: &ParabolicSpec, mass: f64, x: f64) -> f64 {
    let shift = if x < 0.0 { x + p.a } else { x - p.a };
    0.5 * mass * p.w * p.w * shift * shift
}

fn morse_u(m: &MorseSpec, x: f64) -> f64 {
    if x < 0.0 {
        let e = (-m.alpha * (x + m.c)).exp();
        m.depth_left * (e * e - 2.0 * e)
    } else {
        let e = (m.beta * (x - m.a)).exp();
        m.depth_right * (e * e - 2.0 * e)
    }
}

fn morse_context(m: &MorseSpec, cfg: &SolverConfig, e0: f64) -> Result<WkbContext, WkbError> {
    let (hbar, mass) = (cfg.phys.hbar, cfg.phys.mass);
    let tol = cfg.quad_tol;
    let barrier_left = morse_u(m, -1e-12);
    let barrier_right = morse_u(m, 1e-12);
    let top = barrier_left.min(barrier_right);
    if !(e0 > -m.depth_left.min(m.depth_right) && e0 < top) {
        return Err(WkbError::TurningPoint(format!(
            "E0 = {e0} not between the well floors and the barrier saddle {top}"
        )));
    }
    // Inner turning points in closed form: U = E0 on the barrier flanks.
    let y_minus = 1.0 - (1.0 + e0 / m.depth_left).sqrt();
    let x_left = -m.c - y_minus.ln() / m.alpha;
    let z_minus = 1.0 - (1.0 + e0 / m.depth_right).sqrt();
    let x_right = m.a + z_minus.ln() / m.beta;
    if !(x_left > -m.c && x_left < 0.0 && x_right > 0.0 && x_right < m.a) {
        return Err(WkbError::TurningPoint(format!(
            "expected two inner turning points, got ({x_left}, {x_right})"
        )));
    }
    let action = integrate(
        |x| (2.0 * mass * (morse_u(m, x) - e0).max(0.0)).sqrt(),
        x_left,
        x_right,
        tol,
    )? / hbar;
    // Classical period of the left well between its own turning points.
    let y_plus = 1.0 + (1.0 + e0 / m.depth_left).sqrt();
    let x_outer = -m.c - y_plus.ln() / m.alpha;
    if x_outer <= -m.d {
        return Err(WkbError::TurningPoint(format!(
            "outer turning point {x_outer} truncated by the wall at {}",
            -m.d
        )));
    }
    let period = classical_period(|x| morse_u(m, x), e0, mass, x_outer, x_left, -m.c, tol)?;
    Ok(WkbContext {
        e0,
        x_left,
        x_right,
        action,
        w_classical: 2.0 * PI / period,
        v0: (2.0 * (top - e0) / mass).sqrt(),
    })
}

/// Doublet splitting (ħ·w_cl/π)·e^{−action}, times the configured
/// prefactor.
pub fn wkb_splitting(ctx: &WkbContext, cfg: &SolverConfig) -> f64 {
    cfg.phys.wkb_prefactor * ctx.w_classical * cfg.phys.hbar / PI * (-ctx.action).exp()
}

/// The same splitting through the midpoint-wavefunction route
/// ΔE = (2ħ²/m)·φ₀(0)·φ₀′(0) with φ₀(0) = √(w/(2πv₀))e^{−action/2} and
/// φ₀′(0) = (m v₀/ħ)φ₀(0); collapses algebraically to `wkb_splitting`.
pub fn wkb_splitting_via_midpoint(ctx: &WkbContext, cfg: &SolverConfig) -> f64 {
    let (hbar, mass) = (cfg.phys.hbar, cfg.phys.mass);
    let phi0_sq = ctx.w_classical / (2.0 * PI * ctx.v0) * (-ctx.action).exp();
    cfg.phys.wkb_prefactor * 2.0 * hbar * hbar / mass * phi0_sq * mass * ctx.v0 / hbar
}

/// Barrier transmission e^{−2·action}, times the configured prefactor.
pub fn wkb_transmission(ctx: &WkbContext, cfg: &SolverConfig) -> f64 {
    cfg.phys.wkb_prefactor * (-2.0 * ctx.action).exp()
}

/// One doublet of the glued-parabola well.
#[derive(Debug, Clone, Copy)]
pub struct ParabolicLevel {
    pub n: usize,
    /// Symmetric member ħw(n+½) − ΔE_n.
    pub e_minus: f64,
    /// Antisymmetric member ħw(n+½) + ΔE_n.
    pub e_plus: f64,
    /// Displacement of each member from the unsplit level; the doublet gap
    /// is twice this.
    pub delta_e_n: f64,
    /// Single-well normalization A_n².
    pub a_n_sq: f64,
    pub alpha: f64,
}

impl ParabolicLevel {
    pub fn doublet_gap(&self) -> f64 {
        self.e_plus - self.e_minus
    }
}

/// ∫_{−c}^{∞} e^{−u²} H_n²(u) du by the stable downward recursion
/// I_n = 2n·I_{n−1} − e^{−c²}·H_n(c)·H_{n−1}(c),  I_0 = (√π/2)(1 + erf c).
fn hermite_halfline_integral(n: usize, c: f64) -> f64 {
    let mut i = 0.5 * PI.sqrt() * (1.0 + erf(c));
    for k in 1..=n {
        i = 2.0 * k as f64 * i - (-c * c).exp() * hermite(k, c) * hermite(k - 1, c);
    }
    i
}

/// Splitting of level n of the glued-parabola well from the unperturbed
/// single-well eigenfunction evaluated at the junction.
pub fn parabolic_splitting(
    spec: &ParabolicSpec,
    cfg: &SolverConfig,
    n: usize,
) -> Result<ParabolicLevel, WkbError> {
    let (hbar, mass) = (cfg.phys.hbar, cfg.phys.mass);
    let alpha = (mass * spec.w / hbar).sqrt();
    let c = alpha * spec.a;
    let norm_integral = hermite_halfline_integral(n, c);
    if !(norm_integral > 0.0) {
        return Err(WkbError::Normalization(format!(
            "half-line Hermite integral {norm_integral} for n = {n}, αa = {c}"
        )));
    }
    let a_n_sq = alpha / norm_integral;
    let hn = hermite(n, c);
    let mut bracket = alpha * alpha * spec.a * hn;
    if n > 0 {
        bracket -= 2.0 * n as f64 * alpha * hermite(n - 1, c);
    }
    let delta_e_n = hbar * hbar / mass * a_n_sq * (-c * c).exp() * hn * bracket;
    let center = hbar * spec.w * (n as f64 + 0.5);
    Ok(ParabolicLevel {
        n,
        e_minus: center - delta_e_n,
        e_plus: center + delta_e_n,
        delta_e_n,
        a_n_sq,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SolverConfig;
    use crate::potential::{InvSquareSpec, SquareWellSpec};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn parabolic(w: f64, a: f64) -> PotentialSpec {
        PotentialSpec::ParabolicPair(ParabolicSpec::new(w, a).unwrap())
    }

    #[test]
    fn square_barrier_action_closed_form() {
        let s = SquareWellSpec::symmetric(2.0, 0.75, 6.0).unwrap();
        let spec = PotentialSpec::SquareWell(s);
        let e0 = 1.3;
        let ctx = wkb_action(&spec, &cfg(), e0).unwrap();
        let expect = s.barrier_width() * (2.0 * (s.u0 - e0)).sqrt();
        assert!((ctx.action - expect).abs() < 1e-14);
        assert_eq!(ctx.x_left, -s.c);
        assert_eq!(ctx.x_right, s.a);
    }

    #[test]
    fn parabolic_action_vanishes_at_barrier_top() {
        let spec = parabolic(1.0, 2.0);
        let top = 2.0; // m w² a² / 2
        let ctx = wkb_action(&spec, &cfg(), top * (1.0 - 1e-9)).unwrap();
        assert!(ctx.action < 1e-3, "action {}", ctx.action);
        assert!(ctx.x_right < 1e-4);
    }

    #[test]
    fn parabolic_action_against_brute_force_grid() {
        let spec = parabolic(1.0, 2.0);
        let e0 = 0.5;
        let ctx = wkb_action(&spec, &cfg(), e0).unwrap();
        // Midpoint rule on 10⁶ cells as the independent route.
        let x_t = ctx.x_right;
        let n = 1_000_000usize;
        let h = 2.0 * x_t / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let x = -x_t + (i as f64 + 0.5) * h;
            let shift = if x < 0.0 { x + 2.0 } else { x - 2.0 };
            let u = 0.5 * shift * shift;
            sum += (2.0 * (u - e0).max(0.0)).sqrt();
        }
        let brute = sum * h;
        assert!(
            (ctx.action - brute).abs() < 1e-8,
            "{} vs {}",
            ctx.action,
            brute
        );
    }

    #[test]
    fn splitting_routes_are_identical() {
        let spec = parabolic(1.0, 2.0);
        let ctx = wkb_action(&spec, &cfg(), 0.5).unwrap();
        let a = wkb_splitting(&ctx, &cfg());
        let b = wkb_splitting_via_midpoint(&ctx, &cfg());
        assert!((a / b - 1.0).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn splitting_transmission_identity() {
        // ΔE = prefactor·(wħ/π)·√(D/prefactor): with prefactor 1 the ratio
        // ΔE / ((wħ/π)√D) is exactly 1.
        for (w, a, e0) in [(1.0, 2.0, 0.5), (2.0, 1.5, 1.1), (0.7, 3.0, 0.4)] {
            let spec = parabolic(w, a);
            let ctx = wkb_action(&spec, &cfg(), e0).unwrap();
            let de = wkb_splitting(&ctx, &cfg());
            let d = wkb_transmission(&ctx, &cfg());
            let recon = ctx.w_classical * cfg().phys.hbar / PI * d.sqrt();
            assert!((de / recon - 1.0).abs() < 1e-12);
            assert!(d <= 1.0);
        }
    }

    #[test]
    fn action_growth_kills_splitting() {
        let mut prev = f64::INFINITY;
        for a in [1.5, 2.0, 2.5, 3.0, 3.5] {
            let spec = parabolic(1.0, a);
            let ctx = wkb_action(&spec, &cfg(), 0.5).unwrap();
            let de = wkb_splitting(&ctx, &cfg());
            assert!(de < prev, "splitting not decreasing at a = {a}");
            prev = de;
        }
    }

    #[test]
    fn square_barrier_wkb_vs_exact_transmission() {
        // Opaque barrier, energies away from the band edges: the WKB and
        // exact coefficients agree within the expected prefactor window.
        let s = SquareWellSpec::symmetric(4.0, 1.0, 8.0).unwrap();
        let spec = PotentialSpec::SquareWell(s);
        let c = cfg();
        for frac in [0.2, 0.35, 0.5, 0.65, 0.8] {
            let e0 = frac * s.u0;
            let ctx = wkb_action(&spec, &c, e0).unwrap();
            if ctx.action < 3.0 {
                continue;
            }
            let wkb = wkb_transmission(&ctx, &c);
            let exact = crate::squarewell::transmission(&s, &c, e0).unwrap().d;
            let ratio = wkb / exact;
            assert!(
                (0.25..=4.0).contains(&ratio),
                "E/U0 = {frac}: ratio {ratio}"
            );
        }
    }

    #[test]
    fn invsquare_barrier_is_rejected() {
        let spec = PotentialSpec::InvSquare(InvSquareSpec::new(1.0, 1.0).unwrap());
        assert!(matches!(
            wkb_action(&spec, &cfg(), 1.0),
            Err(WkbError::TurningPoint(_))
        ));
    }

    #[test]
    fn morse_context_is_sane() {
        let m = MorseSpec::symmetric(20.0, 2.0, 2.0, 6.0).unwrap();
        let spec = PotentialSpec::MorsePair(m);
        let ctx = wkb_action(&spec, &cfg(), -14.0).unwrap();
        assert!(ctx.x_left > -m.c && ctx.x_left < 0.0);
        assert!(ctx.x_right > 0.0 && ctx.x_right < m.a);
        assert!(ctx.action > 0.0 && ctx.action.is_finite());
        assert!(ctx.w_classical > 0.0);
        // Morse well frequency is below the harmonic frequency at depth:
        // ω_harm = α√(2A/m) at the bottom.
        let w_harm = m.alpha * (2.0 * m.depth_left).sqrt();
        assert!(ctx.w_classical < w_harm);
    }

    #[test]
    fn parabolic_ground_displacement_reference() {
        let p = ParabolicSpec::new(1.0, 2.0).unwrap();
        let level = parabolic_splitting(&p, &cfg(), 0).unwrap();
        // A_0² against direct quadrature of the half-line Gaussian.
        let quad = integrate(|x| (-(x - 2.0) * (x - 2.0)).exp(), 0.0, 16.0, 1e-13).unwrap();
        assert!((level.a_n_sq - 1.0 / quad).abs() < 1e-10 * level.a_n_sq);
        // ΔE_0 = A_0²·e^{−4}·2 ≈ 2.07e−2.
        assert!((level.delta_e_n - 2.07e-2).abs() < 1e-4, "{}", level.delta_e_n);
        assert!((level.e_plus + level.e_minus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_matches_quadrature_for_higher_levels() {
        let c = cfg();
        for &a in &[1.5, 2.0, 3.0] {
            let p = ParabolicSpec::new(1.0, a).unwrap();
            for n in 0..=5usize {
                let level = parabolic_splitting(&p, &c, n).unwrap();
                let alpha = level.alpha;
                let quad = integrate(
                    |x| {
                        let u = alpha * (x - a);
                        (-u * u).exp() * hermite(n, u).powi(2)
                    },
                    0.0,
                    a + 14.0 / alpha,
                    1e-12,
                )
                .unwrap();
                let a_sq_quad = alpha / (alpha * quad);
                assert!(
                    (level.a_n_sq / a_sq_quad - 1.0).abs() < 1e-8,
                    "n={n}, a={a}: {} vs {}",
                    level.a_n_sq,
                    a_sq_quad
                );
            }
        }
    }

    #[test]
    fn displacement_dies_with_separation() {
        let c = cfg();
        let mut prev = f64::INFINITY;
        for &a in &[2.0, 2.5, 3.0, 4.0] {
            let p = ParabolicSpec::new(1.0, a).unwrap();
            let level = parabolic_splitting(&p, &c, 0).unwrap();
            assert!(level.delta_e_n > 0.0);
            assert!(level.delta_e_n < prev);
            prev = level.delta_e_n;
        }
    }

    #[test]
    fn wkb_and_junction_splittings_agree_in_order() {
        let c = cfg();
        let p = ParabolicSpec::new(1.0, 2.0).unwrap();
        let level = parabolic_splitting(&p, &c, 0).unwrap();
        let ctx = wkb_action(&parabolic(1.0, 2.0), &c, 0.5).unwrap();
        let wkb_gap = wkb_splitting(&ctx, &c);
        let ratio = wkb_gap / level.doublet_gap();
        assert!((0.5..=2.0).contains(&ratio), "ratio {ratio}");
    }
}
