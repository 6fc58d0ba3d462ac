//! Complex numbers stored as `mantissa · e^exponent`.

use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    mantissa: Complex64,
    exponent: f64,
}

impl ScaledValue {
    pub const ZERO: Self = Self { mantissa: Complex64::new(0.0, 0.0), exponent: 0.0 };

    pub fn new(mantissa: Complex64, exponent: f64) -> Self {
        Self { mantissa, exponent }.normalized()
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    /// Value `e^log`.
    pub fn from_log(log: Complex64) -> Self {
        Self { mantissa: Complex64::from_polar(1.0, log.im), exponent: log.re }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite() && self.exponent.is_finite()
    }

    /// Moves `ln|mantissa|` into the exponent so that `|mantissa| ∈ [1/e, e)`.
    pub fn normalized(self) -> Self {
        let m = self.mantissa.norm();
        if m == 0.0 {
            return Self::ZERO;
        }
        if !m.is_finite() {
            return self;
        }
        if (std::f64::consts::E.recip()..std::f64::consts::E).contains(&m) {
            return self;
        }
        let shift = m.ln();
        Self { mantissa: self.mantissa / m, exponent: self.exponent + shift }
    }

    /// Logarithm whose imaginary part is `arg(mantissa)`.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.exponent + self.mantissa.norm().ln(), self.mantissa.arg())
    }

    /// `ln|v|`
    pub fn log_abs(&self) -> f64 {
        self.exponent + self.mantissa.norm().ln()
    }

    /// Plain complex value; overflows to infinity or underflows to zero when out of range.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return self.mantissa;
        }
        self.mantissa * self.exponent.exp()
    }

    /// `self / other` as a plain complex number.
    pub fn ratio(&self, other: &Self) -> Complex64 {
        (self.mantissa / other.mantissa) * (self.exponent - other.exponent).exp()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.mantissa * c, self.exponent)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exponent >= other.exponent { (self, other) } else { (other, self) };
        let m = hi.mantissa + lo.mantissa * (lo.exponent - hi.exponent).exp();
        Self::new(m, hi.exponent)
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: Self) -> Self {
        Self::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl From<Complex64> for ScaledValue {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_exponents_survive() {
        let v = ScaledValue::from_log(Complex64::new(3000.0, 1.0));
        let w = ScaledValue::from_log(Complex64::new(2999.0, 0.5));
        let r = v.ratio(&w);
        assert!((r - Complex64::from_polar(1f64.exp(), 0.5)).norm() < 1e-12);
        assert!((v * w).exponent() > 5998.0);
        assert!(v.to_complex().re.is_infinite());
    }

    #[test]
    fn add_and_normalize() {
        let a = ScaledValue::from_complex(Complex64::new(3.0, 4.0));
        assert!((a.mantissa().norm() - 1.0).abs() < 1e-15);
        let b = ScaledValue::from_complex(Complex64::new(-3.0, -4.0));
        assert!(a.add(&b).is_zero());
        let c = a.add(&a);
        assert!((c.to_complex() - Complex64::new(6.0, 8.0)).norm() < 1e-14);
        assert!(ScaledValue::from_complex(Complex64::new(0.0, 0.0)).is_zero());
    }

    #[test]
    fn log_round_trip() {
        let z = Complex64::new(-2.0, 0.25);
        let v = ScaledValue::from_complex(z);
        assert!((v.ln().exp() - z).norm() < 1e-15);
        assert!((v.log_abs() - z.norm().ln()).abs() < 1e-15);
    }
}
