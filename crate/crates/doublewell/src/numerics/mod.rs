//! Special functions, root finding and quadrature shared by the solvers.

mod dd;
mod gamma;
mod kummer;
mod quad;
mod roots;
mod special;

pub use gamma::{gamma, ln_gamma_signed};
pub use kummer::{kummer_m, kummer_m_dxi, kummer_m_dxi_log, kummer_m_log, LogVal};
pub use quad::integrate;
pub use roots::{find_roots, RootBracket, RootConfig};
pub use special::{erf, hermite};

pub(crate) use kummer::{kummer_m_log_path, EvalPath};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("Kummer C-parameter {c} is a non-positive integer (pole)")]
    Pole { c: f64 },
    #[error("failed to converge: {0}")]
    Convergence(String),
    #[error("no sign change bracketed on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
}
