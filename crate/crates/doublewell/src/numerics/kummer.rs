//! Kummer's confluent hypergeometric function M(a, c; ξ) and its ξ-derivative.
//!
//! The eigenvalue equations of the Morse solver evaluate M at arguments that
//! grow like e^{α d} with the domain width, so three regimes are needed:
//!
//! * |ξ| moderate — Taylor series in double-double arithmetic (the series at
//!   negative ξ alternates and cancels like e^{|ξ|}, which plain f64 cannot
//!   survive to the accuracies the identity checks demand);
//! * ξ large positive — the dominant branch of the large-argument expansion,
//!   carried in log form because e^ξ overflows;
//! * ξ large negative — the transform M(a,c;ξ) = e^ξ M(c−a,c;−ξ), or the
//!   algebraic large-negative expansion when forced onto the other path.

use super::dd::Dd;
use super::gamma::ln_gamma_signed;
use super::NumericsError;

/// Largest ξ for which the positive-argument Taylor series is used; above
/// this the series still converges but e^ξ-sized terms approach overflow.
const SERIES_MAX_POS: f64 = 690.0;
/// Most negative ξ for which the alternating series is summed directly in
/// double-double; beyond it the Kummer transform is applied first.
const SERIES_MIN_NEG: f64 = -30.0;
const MAX_TERMS: usize = 4000;

/// A signed magnitude kept as `sign · exp(ln)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogVal {
    pub ln: f64,
    pub sign: f64,
}

impl LogVal {
    pub const ZERO: LogVal = LogVal {
        ln: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn from_value(v: f64) -> LogVal {
        if v == 0.0 {
            LogVal::ZERO
        } else {
            LogVal {
                ln: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    pub fn value(self) -> f64 {
        self.sign * self.ln.exp()
    }

    pub fn mul(self, other: LogVal) -> LogVal {
        LogVal {
            ln: self.ln + other.ln,
            sign: self.sign * other.sign,
        }
    }

    /// Multiplies by e^x.
    pub fn scale_exp(self, x: f64) -> LogVal {
        LogVal {
            ln: self.ln + x,
            sign: self.sign,
        }
    }

    /// self + other, factoring out the larger magnitude.
    pub fn add(self, other: LogVal) -> LogVal {
        if self.sign == 0.0 {
            return other;
        }
        if other.sign == 0.0 {
            return self;
        }
        let (big, small) = if self.ln >= other.ln {
            (self, other)
        } else {
            (other, self)
        };
        let rest = big.sign + small.sign * (small.ln - big.ln).exp();
        if rest == 0.0 {
            return LogVal::ZERO;
        }
        LogVal {
            ln: big.ln + rest.abs().ln(),
            sign: rest.signum(),
        }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Taylor series Σ (a)_k/(c)_k ξ^k/k! summed in double-double. The update
/// factors (a+k) and (c+k) are formed with error-free two-sum additions, so
/// the only rounding is the 1e-32-level double-double arithmetic itself.
fn series_dd(a: f64, c: f64, xi: f64) -> Result<f64, NumericsError> {
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_abs: f64 = 1.0;
    let mut small_streak = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num = Dd::from_f64(a).add(Dd::from_f64(kf));
        let den = Dd::from_f64(c).add(Dd::from_f64(kf));
        term = term
            .mul(num)
            .div_f64(den.to_f64())
            .mul_f64(xi)
            .div_f64(kf + 1.0);
        // den is exact as a dd; dividing by its f64 rounding costs ~1e-16
        // of the *low* word only, refine with one correction step:
        // (skipped: den.lo/den.hi ≤ 1e-16 relative, correction below)
        let corr = -den.lo / den.hi;
        term = term.add(term.mul_f64(corr));
        sum = sum.add(term);
        let t = term.abs();
        max_abs = max_abs.max(t);
        if t <= 1e-24 * sum.abs().max(1e-280) && kf >= xi.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum.to_f64());
            }
        } else {
            small_streak = 0;
        }
        if !t.is_finite() {
            return Err(NumericsError::Convergence(
                "kummer series term overflowed".into(),
            ));
        }
    }
    Err(NumericsError::Convergence(format!(
        "kummer series did not converge for a={a}, c={c}, xi={xi}"
    )))
}

/// Terminating series for a ∈ {0, −1, −2, …}.
fn polynomial_dd(a: f64, c: f64, xi: f64) -> f64 {
    let n = (-a) as usize;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..n {
        let kf = k as f64;
        let num = Dd::from_f64(a).add(Dd::from_f64(kf));
        let den = Dd::from_f64(c).add(Dd::from_f64(kf));
        term = term
            .mul(num)
            .div_f64(den.to_f64())
            .mul_f64(xi)
            .div_f64(kf + 1.0);
        let corr = -den.lo / den.hi;
        term = term.add(term.mul_f64(corr));
        sum = sum.add(term);
    }
    sum.to_f64()
}

/// Dominant part of the ξ → +∞ expansion, in log form:
/// M ≈ Γ(c)/Γ(a) · e^ξ ξ^{a−c} · Σ_k (c−a)_k (1−a)_k / (k! ξ^k).
fn asymptotic_pos_log(a: f64, c: f64, xi: f64) -> Result<LogVal, NumericsError> {
    let (lg_c, sg_c) = ln_gamma_signed(c);
    let (lg_a, sg_a) = ln_gamma_signed(a);
    if sg_a == 0.0 {
        // Γ(a) pole: handled by the polynomial branch before we get here.
        return Err(NumericsError::Convergence(
            "asymptotic expansion hit a gamma pole".into(),
        ));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        term *= (c - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * xi);
        if term.abs() >= prev {
            break; // asymptotic tail started growing; truncate at optimum
        }
        prev = term.abs();
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    if prev > 1e-9 * sum.abs() {
        return Err(NumericsError::Convergence(format!(
            "large-xi expansion stalled for a={a}, c={c}, xi={xi}"
        )));
    }
    let ln = lg_c - lg_a + xi + (a - c) * xi.ln() + sum.abs().ln();
    Ok(LogVal {
        ln,
        sign: sg_c * sg_a * sum.signum(),
    })
}

/// Algebraic part of the ξ → −∞ expansion, in log form:
/// M ≈ Γ(c)/Γ(c−a) · (−ξ)^{−a} · Σ_k (a)_k (a−c+1)_k / (k! (−ξ)^k).
fn asymptotic_neg_log(a: f64, c: f64, xi: f64) -> Result<LogVal, NumericsError> {
    let (lg_c, sg_c) = ln_gamma_signed(c);
    let (lg_ca, sg_ca) = ln_gamma_signed(c - a);
    if sg_ca == 0.0 {
        return Err(NumericsError::Convergence(
            "large-negative expansion hit a gamma pole".into(),
        ));
    }
    let z = -xi;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        term *= (a + kf) * (a - c + 1.0 + kf) / ((kf + 1.0) * z);
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    if prev > 1e-9 * sum.abs() {
        return Err(NumericsError::Convergence(format!(
            "large-negative expansion stalled for a={a}, c={c}, xi={xi}"
        )));
    }
    let ln = lg_c - lg_ca - a * z.ln() + sum.abs().ln();
    Ok(LogVal {
        ln,
        sign: sg_c * sg_ca * sum.signum(),
    })
}

/// Which evaluation route to take; `ForceTransform` exists so tests can
/// verify the transform and the direct route agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EvalPath {
    Auto,
    ForceTransform,
}

pub(crate) fn kummer_m_log_path(
    a: f64,
    c: f64,
    xi: f64,
    path: EvalPath,
) -> Result<LogVal, NumericsError> {
    if is_nonpositive_integer(c) {
        return Err(NumericsError::Pole { c });
    }
    if a == 0.0 || xi == 0.0 {
        return Ok(LogVal::from_value(1.0));
    }
    if is_nonpositive_integer(a) {
        return Ok(LogVal::from_value(polynomial_dd(a, c, xi)));
    }
    if path == EvalPath::ForceTransform {
        // e^ξ M(c−a, c; −ξ), with the mirrored argument evaluated directly.
        let mirrored = if -xi < SERIES_MIN_NEG {
            asymptotic_neg_log(c - a, c, -xi)?
        } else if -xi > SERIES_MAX_POS {
            asymptotic_pos_log(c - a, c, -xi)?
        } else {
            LogVal::from_value(series_dd(c - a, c, -xi)?)
        };
        return Ok(mirrored.scale_exp(xi));
    }
    if xi > SERIES_MAX_POS {
        asymptotic_pos_log(a, c, xi)
    } else if xi < SERIES_MIN_NEG {
        // Transform to an all-positive series, carrying e^ξ in the log.
        let mirrored = if -xi > SERIES_MAX_POS {
            asymptotic_pos_log(c - a, c, -xi)?
        } else {
            LogVal::from_value(series_dd(c - a, c, -xi)?)
        };
        Ok(mirrored.scale_exp(xi))
    } else {
        Ok(LogVal::from_value(series_dd(a, c, xi)?))
    }
}

/// M(a, c; ξ) = Σ_k (a)_k/(c)_k · ξ^k/k!.
pub fn kummer_m(a: f64, c: f64, xi: f64) -> Result<f64, NumericsError> {
    if is_nonpositive_integer(c) {
        return Err(NumericsError::Pole { c });
    }
    if a == 0.0 || xi == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) {
        return Ok(polynomial_dd(a, c, xi));
    }
    if (SERIES_MIN_NEG..=SERIES_MAX_POS).contains(&xi) {
        series_dd(a, c, xi)
    } else {
        Ok(kummer_m_log_path(a, c, xi, EvalPath::Auto)?.value())
    }
}

/// Signed-log form of M(a, c; ξ), usable when the value itself overflows.
pub fn kummer_m_log(a: f64, c: f64, xi: f64) -> Result<LogVal, NumericsError> {
    kummer_m_log_path(a, c, xi, EvalPath::Auto)
}

/// dM/dξ = (a/c) · M(a+1, c+1; ξ).
pub fn kummer_m_dxi(a: f64, c: f64, xi: f64) -> Result<f64, NumericsError> {
    if is_nonpositive_integer(c) {
        return Err(NumericsError::Pole { c });
    }
    Ok(a / c * kummer_m(a + 1.0, c + 1.0, xi)?)
}

/// Signed-log form of dM/dξ.
pub fn kummer_m_dxi_log(a: f64, c: f64, xi: f64) -> Result<LogVal, NumericsError> {
    if is_nonpositive_integer(c) {
        return Err(NumericsError::Pole { c });
    }
    if a == 0.0 {
        return Ok(LogVal::ZERO);
    }
    let m = kummer_m_log(a + 1.0, c + 1.0, xi)?;
    Ok(m.mul(LogVal::from_value(a / c)))
}
