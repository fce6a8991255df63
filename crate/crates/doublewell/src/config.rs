//! Physical constants and solver tuning knobs shared by every solver.

use crate::numerics::RootConfig;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

/// Physical constants entering the Schrödinger equation, plus the WKB
/// proportionality factor. Everything defaults to 1 so the dimensionless
/// formulas can be checked by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConfig {
    pub hbar: f64,
    pub mass: f64,
    /// Prefactor of the WKB transmission coefficient; exactly 1 to first
    /// order in ħ.
    pub wkb_prefactor: f64,
}

impl Default for PhysConfig {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            wkb_prefactor: 1.0,
        }
    }
}

impl PhysConfig {
    pub fn new(hbar: f64, mass: f64) -> Result<Self, ConfigError> {
        let cfg = Self {
            hbar,
            mass,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("wkb_prefactor", self.wkb_prefactor),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ConfigError::NonPositive { name, value });
            }
        }
        Ok(())
    }
}

/// Tolerances and scan grids used by the spectrum solvers.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub phys: PhysConfig,
    pub root: RootConfig,
    /// Absolute tolerance handed to adaptive quadrature.
    pub quad_tol: f64,
    /// Level-coincidence tolerance for the region classification, as a
    /// fraction of the barrier height.
    pub match_tol_rel: f64,
    /// Half-width of the guard bands around 2s ∈ ℤ in the Morse solver,
    /// in units of s.
    pub degenerate_guard: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            phys: PhysConfig::default(),
            root: RootConfig::default(),
            quad_tol: 1e-10,
            match_tol_rel: 1e-6,
            degenerate_guard: 1e-6,
        }
    }
}

impl SolverConfig {
    pub fn with_phys(phys: PhysConfig) -> Self {
        Self {
            phys,
            ..Self::default()
        }
    }

    /// A copy with a denser scan grid, for spectra with tight doublets.
    pub fn with_scan_points(mut self, scan_points: usize) -> Self {
        self.root.scan_points = scan_points;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_unit() {
        let p = PhysConfig::default();
        assert_eq!(p.hbar, 1.0);
        assert_eq!(p.mass, 1.0);
        assert_eq!(p.wkb_prefactor, 1.0);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_nonpositive_constants() {
        assert!(PhysConfig::new(0.0, 1.0).is_err());
        assert!(PhysConfig::new(1.0, -2.0).is_err());
        assert!(PhysConfig::new(f64::NAN, 1.0).is_err());
    }
}
