//! Minimal double-double arithmetic for series with heavy cancellation.
//!
//! A value is stored as an unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2,
//! giving ~31 significant digits. Only the operations the Kummer series
//! needs are implemented.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let lo = s2 + self.lo + other.lo;
        let (hi, lo) = two_sum(s1, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p1, p2) = two_prod(q1, x);
        let r = ((self.hi - p1) - p2 + self.lo) / x;
        let (hi, lo) = two_sum(q1, r);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survives_catastrophic_cancellation() {
        // 1 + 1e-20 - 1 vanishes in f64 but not in dd.
        let x = Dd::ONE.add(Dd::from_f64(1e-20)).add(Dd::from_f64(-1.0));
        assert_eq!(x.to_f64(), 1e-20);
    }

    #[test]
    fn product_keeps_low_bits() {
        let a = Dd::from_f64(1.0 + 2f64.powi(-30));
        let b = a.mul(a);
        let expect = 1.0 + 2f64.powi(-29) + 2f64.powi(-60);
        assert!((b.to_f64() - expect).abs() < 1e-25);
    }

    #[test]
    fn division_round_trip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = a.div_f64(7.0).mul_f64(7.0);
        assert!((b.to_f64() - std::f64::consts::PI).abs() < 1e-30);
    }
}
