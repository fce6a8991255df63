//! Bound-state spectra, tunneling coefficients, level splittings and
//! oscillation periods for one-dimensional double-well potentials, with an
//! independent finite-difference oracle cross-checking every analytic
//! solver.

pub mod config;
pub mod invsq;
pub mod morse;
pub mod numerics;
pub mod oracle;
pub mod potential;
pub mod squarewell;
pub mod wkb;
