//! Exact rational coefficient polynomials of the Liouville-Green expansions.
//!
//! `E_s` belongs to the expansion of `U(a,z)`, `Ẽ_s` (here `etilde`) to that
//! of `U'(a,z)`. Both are polynomials in `β̄` of degree `3s`, built once with
//! arbitrary-precision rationals and cached as `f64` for evaluation.

use std::fmt::Write as _;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::CoeffError;

pub const DEFAULT_ORDER: usize = 12;

/// Polynomial with exact rational coefficients, index = power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(num: &[i64], den: i64) -> Self {
        Self::new(num.iter().map(|&n| q(n, den)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k + 1)));
        }
        Self::new(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Even when every odd-power coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// Horner evaluation in double precision.
pub fn eval_poly(p: &RationalPolynomial, x: Complex64) -> Complex64 {
    eval_f64_poly(&p.to_f64(), x)
}

/// Horner evaluation of a cached `f64` coefficient vector.
#[inline]
pub fn eval_f64_poly(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

#[inline]
pub fn eval_f64_poly_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `(p^2-1)^2`
fn weight() -> RationalPolynomial {
    RationalPolynomial::from_ints(&[1, 0, -2, 0, 1], 1)
}

/// Shared recurrence; `sign = +1` for `E`, `-1` for `Ẽ` (whose weight
/// `(1-p^2)^2` equals `(p^2-1)^2`).
fn build_tables(
    order: usize,
    first: RationalPolynomial,
    second: RationalPolynomial,
    sign: i64,
) -> Result<Vec<RationalPolynomial>, CoeffError> {
    if order == 0 {
        return Err(CoeffError::ZeroOrder(order));
    }
    let w = weight();
    let half = q(sign, 2);
    let mut e = vec![first, second];
    let mut derivs: Vec<RationalPolynomial> = e.iter().map(|p| p.derivative()).collect();
    for s in 2..order {
        let mut acc = RationalPolynomial::zero();
        for j in 1..s {
            acc = &acc + &(&derivs[j - 1] * &derivs[s - j - 1]);
        }
        let mut integral = (&w * &acc).antiderivative();
        let lower = if s % 2 == 1 { BigRational::one() } else { BigRational::zero() };
        let offset = integral.eval_rational(&lower);
        if !offset.is_zero() {
            let c0 = integral.coeff(0) - offset;
            let mut cs = integral.coeffs.clone();
            if cs.is_empty() {
                cs.push(c0);
            } else {
                cs[0] = c0;
            }
            integral = RationalPolynomial::new(cs);
        }
        let next = (&(&w * &derivs[s - 1]) + &integral).scale(&half);
        derivs.push(next.derivative());
        e.push(next);
    }
    e.truncate(order);
    Ok(e)
}

/// `E_1..E_order` for the expansion of `U`.
pub fn build_e_tables(order: usize) -> Result<Vec<RationalPolynomial>, CoeffError> {
    let e1 = RationalPolynomial::from_ints(&[0, -6, 0, 5], 24);
    let e2 = &weight() * &RationalPolynomial::from_ints(&[-2, 0, 5], 16);
    build_tables(order, e1, e2, 1)
}

/// `Ẽ_1..Ẽ_order` for the expansion of `U'`.
pub fn build_etilde_tables(order: usize) -> Result<Vec<RationalPolynomial>, CoeffError> {
    let e1 = RationalPolynomial::from_ints(&[0, -6, 0, 7], 24);
    let e2 = &weight() * &RationalPolynomial::from_ints(&[2, 0, -7], 16);
    build_tables(order, e1, e2, -1)
}

/// Which coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    E,
    Etilde,
}

#[derive(Debug, Clone)]
pub struct LgCoeffTables {
    order: usize,
    e: Vec<RationalPolynomial>,
    etilde: Vec<RationalPolynomial>,
    e_f64: Vec<Vec<f64>>,
    etilde_f64: Vec<Vec<f64>>,
}

impl LgCoeffTables {
    pub fn new(order: usize) -> Result<Self, CoeffError> {
        let e = build_e_tables(order)?;
        let etilde = build_etilde_tables(order)?;
        let e_f64 = e.iter().map(RationalPolynomial::to_f64).collect();
        let etilde_f64 = etilde.iter().map(RationalPolynomial::to_f64).collect();
        Ok(Self { order, e, etilde, e_f64, etilde_f64 })
    }

    /// Default-order tables, built on first use.
    pub fn shared() -> &'static LgCoeffTables {
        static TABLES: OnceLock<LgCoeffTables> = OnceLock::new();
        TABLES.get_or_init(|| LgCoeffTables::new(DEFAULT_ORDER).expect("nonzero order"))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exact polynomial, `s` is 1-based.
    pub fn exact(&self, family: Family, s: usize) -> &RationalPolynomial {
        match family {
            Family::E => &self.e[s - 1],
            Family::Etilde => &self.etilde[s - 1],
        }
    }

    /// Cached `f64` coefficients, `s` is 1-based.
    #[inline]
    pub fn float(&self, family: Family, s: usize) -> &[f64] {
        match family {
            Family::E => &self.e_f64[s - 1],
            Family::Etilde => &self.etilde_f64[s - 1],
        }
    }

    /// One line per polynomial: `E s : c0/d0 c1/d1 ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (name, fam) in [("E", &self.e), ("Et", &self.etilde)] {
            for (i, p) in fam.iter().enumerate() {
                let _ = write!(out, "{name} {} :", i + 1);
                for c in p.coefficients() {
                    let _ = write!(out, " {}/{}", c.numer(), c.denom());
                }
                out.push('\n');
            }
        }
        out
    }
}
