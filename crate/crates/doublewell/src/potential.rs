//! The four double-well potential families and the shared spectrum types.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("x = {x} is outside the potential domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("potential is singular at x = 0")]
    Singularity,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn require(cond: bool, msg: &str) -> Result<(), DomainError> {
    if cond {
        Ok(())
    } else {
        Err(DomainError::InvalidParameter(msg.to_string()))
    }
}

/// Infinite square double well: hard walls at −d and b, a rectangular
/// barrier of height `u0` on [−c, a], and a right-well floor at −`w0`.
///
/// ```text
///        ∞ |      ____________       | ∞
///          |     |            |      |
///     0 ———|—————|    u0      |      |
///          | I   |    III     | II   |
///          |_____|            |______|  −w0
///         −d    −c            a      b
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWellSpec {
    pub d: f64,
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub u0: f64,
    pub w0: f64,
}

impl SquareWellSpec {
    pub fn new(d: f64, c: f64, a: f64, b: f64, u0: f64, w0: f64) -> Result<Self, DomainError> {
        require(-d < -c, "requires -d < -c")?;
        // -c == a is the zero-width-barrier (merged well) limit.
        require(-c <= a, "requires -c <= a")?;
        require(a < b, "requires a < b")?;
        require(u0 > 0.0, "requires U0 > 0")?;
        require(w0 >= 0.0, "requires W0 >= 0")?;
        Ok(Self { d, c, a, b, u0, w0 })
    }

    /// Mirror-symmetric geometry: d = b, c = a, W0 = 0.
    pub fn symmetric(b: f64, a: f64, u0: f64) -> Result<Self, DomainError> {
        Self::new(b, a, a, b, u0, 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.d == self.b && self.c == self.a && self.w0 == 0.0
    }

    pub fn barrier_width(&self) -> f64 {
        self.a + self.c
    }

    pub fn left_width(&self) -> f64 {
        self.d - self.c
    }

    pub fn right_width(&self) -> f64 {
        self.b - self.a
    }
}

/// Back-to-back Morse wells with hard walls at −d and b; the left well
/// bottoms out at −A at x = −c, the right at −B at x = a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseSpec {
    pub depth_left: f64,
    pub depth_right: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
    pub a: f64,
    pub d: f64,
    pub b: f64,
}

impl MorseSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        depth_left: f64,
        depth_right: f64,
        alpha: f64,
        beta: f64,
        c: f64,
        a: f64,
        d: f64,
        b: f64,
    ) -> Result<Self, DomainError> {
        require(depth_left > 0.0 && depth_right > 0.0, "well depths must be > 0")?;
        require(alpha > 0.0 && beta > 0.0, "decay rates must be > 0")?;
        require(d > 0.0 && b > 0.0, "requires -d < 0 < b")?;
        require(0.0 < c && c < d, "left minimum -c must lie inside (-d, 0)")?;
        require(0.0 < a && a < b, "right minimum a must lie inside (0, b)")?;
        Ok(Self {
            depth_left,
            depth_right,
            alpha,
            beta,
            c,
            a,
            d,
            b,
        })
    }

    pub fn symmetric(depth: f64, alpha: f64, a: f64, b: f64) -> Result<Self, DomainError> {
        Self::new(depth, depth, alpha, alpha, a, a, b, b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.depth_left == self.depth_right
            && self.alpha == self.beta
            && self.c == self.a
            && self.d == self.b
    }
}

/// U(x) = (m w²/2)(x² + B²/x²). For B > 0 the centrifugal term is an
/// impenetrable barrier at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvSquareSpec {
    pub w: f64,
    pub b_param: f64,
}

impl InvSquareSpec {
    pub fn new(w: f64, b_param: f64) -> Result<Self, DomainError> {
        require(w > 0.0, "requires w > 0")?;
        require(b_param >= 0.0, "requires B >= 0")?;
        Ok(Self { w, b_param })
    }
}

/// Two half-parabolas (m w²/2)(x ± a)² glued at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicSpec {
    pub w: f64,
    pub a: f64,
}

impl ParabolicSpec {
    pub fn new(w: f64, a: f64) -> Result<Self, DomainError> {
        require(w > 0.0, "requires w > 0")?;
        require(a > 0.0, "requires a > 0")?;
        Ok(Self { w, a })
    }
}

/// Tagged union over the four potential families.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    SquareWell(SquareWellSpec),
    MorsePair(MorseSpec),
    InvSquare(InvSquareSpec),
    ParabolicPair(ParabolicSpec),
}

impl PotentialSpec {
    /// U(x), with `mass` entering the InvSquare/Parabolic families.
    pub fn evaluate(&self, mass: f64, x: f64) -> Result<f64, DomainError> {
        match self {
            PotentialSpec::SquareWell(s) => {
                if x < -s.d || x > s.b {
                    return Err(DomainError::OutsideDomain {
                        x,
                        lo: -s.d,
                        hi: s.b,
                    });
                }
                Ok(if x < -s.c {
                    0.0
                } else if x <= s.a {
                    s.u0
                } else {
                    -s.w0
                })
            }
            PotentialSpec::MorsePair(m) => {
                if x < -m.d || x > m.b {
                    return Err(DomainError::OutsideDomain {
                        x,
                        lo: -m.d,
                        hi: m.b,
                    });
                }
                Ok(if x < 0.0 {
                    let e = (-m.alpha * (x + m.c)).exp();
                    m.depth_left * (e * e - 2.0 * e)
                } else {
                    let e = (m.beta * (x - m.a)).exp();
                    m.depth_right * (e * e - 2.0 * e)
                })
            }
            PotentialSpec::InvSquare(s) => {
                if x == 0.0 && s.b_param > 0.0 {
                    return Err(DomainError::Singularity);
                }
                let centrifugal = if s.b_param == 0.0 {
                    0.0
                } else {
                    s.b_param * s.b_param / (x * x)
                };
                Ok(0.5 * mass * s.w * s.w * (x * x + centrifugal))
            }
            PotentialSpec::ParabolicPair(p) => {
                let shift = if x < 0.0 { x + p.a } else { x - p.a };
                Ok(0.5 * mass * p.w * p.w * shift * shift)
            }
        }
    }

    /// Finite domain for families with hard walls, `None` for the
    /// whole-line families.
    pub fn finite_domain(&self) -> Option<(f64, f64)> {
        match self {
            PotentialSpec::SquareWell(s) => Some((-s.d, s.b)),
            PotentialSpec::MorsePair(m) => Some((-m.d, m.b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Well {
    Left,
    Right,
    Both,
}

/// One bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub index: usize,
    pub parity: Parity,
    pub well: Well,
}

/// Ordered list of bound states for one potential.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub family: PotentialSpec,
    pub count_bound: usize,
}

impl Spectrum {
    /// Builds a spectrum from levels already sorted by energy; indices are
    /// rewritten to the ascending order.
    pub fn from_levels(mut levels: Vec<Level>, family: PotentialSpec) -> Self {
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        for (i, level) in levels.iter_mut().enumerate() {
            level.index = i;
        }
        let count_bound = levels.len();
        Self {
            levels,
            family,
            count_bound,
        }
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn is_strictly_ascending(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].energy < w[1].energy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_barrier_value() {
        let s = SquareWellSpec::new(2.0, 1.0, 1.0, 2.0, 2.0, 0.0).unwrap();
        let p = PotentialSpec::SquareWell(s);
        assert_eq!(p.evaluate(1.0, 0.0).unwrap(), 2.0);
        assert_eq!(p.evaluate(1.0, -1.5).unwrap(), 0.0);
        assert_eq!(p.evaluate(1.0, 1.5).unwrap(), -0.0);
        assert!(p.evaluate(1.0, 2.5).is_err());
    }

    #[test]
    fn invsquare_values() {
        let p = PotentialSpec::InvSquare(InvSquareSpec::new(1.0, 0.0).unwrap());
        assert_eq!(p.evaluate(1.0, 2.0).unwrap(), 2.0);
        let q = PotentialSpec::InvSquare(InvSquareSpec::new(1.0, 1.0).unwrap());
        assert_eq!(q.evaluate(1.0, 0.0), Err(DomainError::Singularity));
        // B = 0 is a plain oscillator, regular at the origin.
        assert_eq!(p.evaluate(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn parabolic_cusp_value() {
        let p = PotentialSpec::ParabolicPair(ParabolicSpec::new(1.0, 1.0).unwrap());
        assert_eq!(p.evaluate(1.0, 0.0).unwrap(), 0.5);
        assert_eq!(p.evaluate(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(p.evaluate(1.0, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_configurations_are_even_functions() {
        let mass = 1.3;
        let specs = [
            PotentialSpec::SquareWell(SquareWellSpec::symmetric(2.0, 0.7, 4.0).unwrap()),
            PotentialSpec::MorsePair(MorseSpec::symmetric(5.0, 1.5, 1.0, 3.0).unwrap()),
            PotentialSpec::InvSquare(InvSquareSpec::new(2.0, 0.5).unwrap()),
            PotentialSpec::ParabolicPair(ParabolicSpec::new(1.0, 2.0).unwrap()),
        ];
        for spec in &specs {
            for i in 1..40 {
                let x = 1.9 * i as f64 / 40.0;
                let up = spec.evaluate(mass, x).unwrap();
                let dn = spec.evaluate(mass, -x).unwrap();
                assert!(
                    (up - dn).abs() <= 1e-12 * up.abs().max(1.0),
                    "asymmetry at x={x}: {up} vs {dn} for {spec:?}"
                );
            }
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(SquareWellSpec::new(1.0, 2.0, 1.0, 2.0, 1.0, 0.0).is_err());
        assert!(SquareWellSpec::new(2.0, 1.0, 1.0, 0.5, 1.0, 0.0).is_err());
        assert!(SquareWellSpec::new(2.0, 1.0, 1.0, 2.0, -1.0, 0.0).is_err());
        assert!(MorseSpec::new(1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 2.0, 2.0).is_err());
        assert!(InvSquareSpec::new(0.0, 1.0).is_err());
        assert!(ParabolicSpec::new(1.0, 0.0).is_err());
    }
}
