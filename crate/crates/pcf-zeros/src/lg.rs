//! Liouville-Green expansions of `U(½u, √(2u)ẑ)` and `U'(½u, √(2u)ẑ)` for
//! large positive `u`, plus the auxiliary expansions at `-√(2u)ẑ` and at
//! `-i√(2u)ẑ` with parameter `-½u`.
//!
//! Everything is returned as [`ScaledValue`] since the prefactor
//! `(2e/u)^{u/4}` leaves the `f64` range for `u` in the thousands.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::coeffs::{eval_f64_poly, eval_f64_poly_real, Family, LgCoeffTables, DEFAULT_ORDER};
use crate::error::LgError;
use crate::scaled::ScaledValue;

const I: Complex64 = Complex64::new(0.0, 1.0);
const CUT_TOL: f64 = 1e-13;
const TERM_STOP: f64 = 1e-17;
const TERM_FLAG: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgOptions {
    /// Number of coefficients `S` used in the series.
    pub order: usize,
    pub u_min: f64,
    /// Exclusion radius around the turning point `ẑ = i` (and the segment below it).
    pub r_tp: f64,
}

impl Default for LgOptions {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, u_min: 36.0, r_tp: 0.35 }
    }
}

/// Principal `√(ẑ²+1)`, which carries the right branch in the closed second quadrant.
fn root(zhat: Complex64) -> Complex64 {
    (zhat * zhat + 1.0).sqrt()
}

fn check_cut(zhat: Complex64) -> Result<(), LgError> {
    if zhat.re.abs() <= CUT_TOL && zhat.im.abs() >= 1.0 - CUT_TOL {
        return Err(LgError::OnCut(zhat));
    }
    Ok(())
}

/// `ξ̄(ẑ) - (-½ẑ²)` for `Re ẑ < 0`, free of the cancellation in `ẑ + √(ẑ²+1)`.
fn xi_remainder(zhat: Complex64, w: Complex64) -> Complex64 {
    let d = w - zhat;
    0.5 * zhat / d - 0.5 * d.ln()
}

/// `ξ̄(ẑ) = ∫₀^ẑ (t²+1)^{1/2} dt`.
pub fn xi_bar(zhat: Complex64) -> Result<Complex64, LgError> {
    check_cut(zhat)?;
    let w = root(zhat);
    if zhat.re < 0.0 {
        Ok(-0.5 * zhat * zhat + xi_remainder(zhat, w))
    } else {
        Ok(0.5 * zhat * w + 0.5 * (zhat + w).ln())
    }
}

/// `β̄(ẑ) = ẑ/√(ẑ²+1)`.
pub fn beta_bar(zhat: Complex64) -> Result<Complex64, LgError> {
    check_cut(zhat)?;
    Ok(zhat / root(zhat))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgPoint {
    pub u: f64,
    pub zhat: Complex64,
    pub xi: Complex64,
    pub beta: Complex64,
    /// `ρ = iξ̄ + π/4`
    pub rho: Complex64,
}

impl LgPoint {
    pub fn new(u: f64, zhat: Complex64) -> Result<Self, LgError> {
        let xi = xi_bar(zhat)?;
        let beta = beta_bar(zhat)?;
        Ok(Self { u, zhat, xi, beta, rho: I * xi + FRAC_PI_4 })
    }
}

/// Phases of the cosine and sine factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chi {
    pub chi: Complex64,
    pub chitilde: Complex64,
}

/// A log-scaled expansion value plus whether its series settled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgValue {
    pub value: ScaledValue,
    pub converged: bool,
}

#[derive(Clone, Copy)]
enum Exclusion {
    TurningPoint,
    Segment,
}

/// Shared per-point data. `u_xi` is formed from `z` directly so that the
/// dominant `-z²/4` part carries no error from the scaling by `√(2u)`.
struct Prepared {
    u: f64,
    beta: Complex64,
    u_xi: Complex64,
    log_q: Complex64,
}

fn distance_to_segment(zhat: Complex64) -> f64 {
    let y = zhat.im.clamp(0.0, 1.0);
    (zhat - Complex64::new(0.0, y)).norm()
}

fn prepare(
    u: f64,
    z: Complex64,
    opts: &LgOptions,
    exclusion: Exclusion,
) -> Result<Prepared, LgError> {
    if u < opts.u_min {
        return Err(LgError::SmallParameter(u, opts.u_min));
    }
    let zhat = z / (2.0 * u).sqrt();
    check_cut(zhat)?;
    match exclusion {
        Exclusion::TurningPoint => {
            if zhat.im < -CUT_TOL {
                return Err(LgError::Region(zhat, "not in the upper half-plane"));
            }
            if (zhat - I).norm() < opts.r_tp {
                return Err(LgError::Region(zhat, "too close to the turning point"));
            }
        }
        Exclusion::Segment => {
            if zhat.re > CUT_TOL || zhat.im < -CUT_TOL {
                return Err(LgError::Region(zhat, "not in the second quadrant"));
            }
            if distance_to_segment(zhat) < opts.r_tp {
                return Err(LgError::Region(zhat, "too close to the segment [0, i]"));
            }
        }
    }
    let w = root(zhat);
    let u_xi = if zhat.re < 0.0 {
        -0.25 * z * z + u * xi_remainder(zhat, w)
    } else {
        u * (0.5 * zhat * w + 0.5 * (zhat + w).ln())
    };
    Ok(Prepared { u, beta: zhat / w, u_xi, log_q: (2.0 * u + z * z).ln() })
}

struct Series {
    sum: Complex64,
    converged: bool,
}

/// `Σ_{s ∈ ks} term(s)`, stopping once terms fall below roundoff.
fn series(ks: impl Iterator<Item = usize>, term: impl Fn(usize) -> Complex64) -> Series {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for s in ks {
        let t = term(s);
        sum += t;
        last = t.norm();
        if last < TERM_STOP * sum.norm().max(1.0) {
            break;
        }
    }
    Series { sum, converged: last <= TERM_FLAG * sum.norm().max(1.0) }
}

fn odd(order: usize) -> impl Iterator<Item = usize> {
    (1..=order).step_by(2)
}

fn even(order: usize) -> impl Iterator<Item = usize> {
    (2..=order).step_by(2)
}

fn log_cos(chi: Complex64) -> Complex64 {
    let w = I * chi;
    if w.re >= 0.0 {
        w + (0.5 * (1.0 + (-2.0 * w).exp())).ln()
    } else {
        -w + (0.5 * (1.0 + (2.0 * w).exp())).ln()
    }
}

fn log_sin(chi: Complex64) -> Complex64 {
    let w = I * chi;
    let two_i = Complex64::new(0.0, 2.0);
    if w.re >= 0.0 {
        w + ((1.0 - (-2.0 * w).exp()) / two_i).ln()
    } else {
        -w + (((2.0 * w).exp() - 1.0) / two_i).ln()
    }
}

fn pow_u(u: f64, s: usize) -> f64 {
    u.powi(s as i32)
}

fn log_prefactor(u: f64) -> f64 {
    0.25 * u * (2.0 * std::f64::consts::E / u).ln()
}

struct Phase {
    chi: Complex64,
    even: Series,
    odd_const: Series,
    odd_beta: Series,
}

fn phase(p: &Prepared, tables: &LgCoeffTables, order: usize, family: Family) -> Phase {
    let u = p.u;
    let (sign, at) = match family {
        Family::E => (-1.0, -1.0),
        Family::Etilde => (1.0, 1.0),
    };
    let even = series(even(order), |s| eval_f64_poly(tables.float(family, s), p.beta) / pow_u(u, s));
    let odd_const = series(odd(order), |s| {
        Complex64::new(eval_f64_poly_real(tables.float(family, s), at) / pow_u(u, s), 0.0)
    });
    let odd_beta = series(odd(order), |s| eval_f64_poly(tables.float(family, s), p.beta) / pow_u(u, s));
    let chi = I * p.u_xi + 0.25 * (u + 1.0) * PI + sign * I * odd_beta.sum;
    Phase { chi, even, odd_const, odd_beta }
}

fn checked_order(tables: &LgCoeffTables, opts: &LgOptions) -> usize {
    opts.order.min(tables.order())
}

fn u_from_prepared(p: &Prepared, tables: &LgCoeffTables, order: usize) -> LgValue {
    let u = p.u;
    let ph = phase(p, tables, order, Family::E);
    let log = log_prefactor(u) + std::f64::consts::LN_2 - I * (0.25 * (u + 1.0) * PI)
        - 0.25 * p.log_q
        + ph.even.sum
        + ph.odd_const.sum
        + log_cos(ph.chi);
    LgValue {
        value: ScaledValue::from_log(log),
        converged: ph.even.converged && ph.odd_const.converged && ph.odd_beta.converged,
    }
}

fn uprime_from_prepared(p: &Prepared, tables: &LgCoeffTables, order: usize) -> LgValue {
    let u = p.u;
    let ph = phase(p, tables, order, Family::Etilde);
    let log = log_prefactor(u) + I * PI - I * (0.25 * (u - 1.0) * PI)
        + 0.25 * p.log_q
        + ph.even.sum
        + ph.odd_const.sum
        + log_sin(ph.chi);
    LgValue {
        value: ScaledValue::from_log(log),
        converged: ph.even.converged && ph.odd_const.converged && ph.odd_beta.converged,
    }
}

fn zhat_to_z(u: f64, zhat: Complex64) -> Complex64 {
    zhat * (2.0 * u).sqrt()
}

/// `U(½u, √(2u)ẑ)`.
pub fn eval_u(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::Segment)?;
    Ok(u_from_prepared(&p, tables, checked_order(tables, opts)))
}

/// `U'(½u, √(2u)ẑ)`.
pub fn eval_uprime(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::Segment)?;
    Ok(uprime_from_prepared(&p, tables, checked_order(tables, opts)))
}

/// `U(a, z)` and `U'(a, z)` at an unscaled second-quadrant point.
pub fn eval_pair_at(
    a: f64,
    z: Complex64,
    tables: &LgCoeffTables,
    opts: &LgOptions,
) -> Result<(LgValue, LgValue), LgError> {
    let p = prepare(2.0 * a, z, opts, Exclusion::Segment)?;
    let order = checked_order(tables, opts);
    Ok((u_from_prepared(&p, tables, order), uprime_from_prepared(&p, tables, order)))
}

/// `U(a, z)` at an unscaled second-quadrant point.
pub fn eval_u_at(a: f64, z: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(2.0 * a, z, opts, Exclusion::Segment)?;
    Ok(u_from_prepared(&p, tables, checked_order(tables, opts)))
}

/// `U'(a, z)` at an unscaled second-quadrant point.
pub fn eval_uprime_at(a: f64, z: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(2.0 * a, z, opts, Exclusion::Segment)?;
    Ok(uprime_from_prepared(&p, tables, checked_order(tables, opts)))
}

/// The phases `χ` and `χ̃`.
pub fn chi(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<Chi, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::Segment)?;
    let order = checked_order(tables, opts);
    Ok(Chi {
        chi: phase(&p, tables, order, Family::E).chi,
        chitilde: phase(&p, tables, order, Family::Etilde).chi,
    })
}

/// `Σ_{s=1}^{S} (±1)^s (P_s(β̄) - P_s(-1)) / u^s`
fn shifted_series(p: &Prepared, tables: &LgCoeffTables, order: usize, family: Family, alternate: bool) -> Series {
    series(1..=order, |s| {
        let c = tables.float(family, s);
        let sign = if alternate && s % 2 == 1 { -1.0 } else { 1.0 };
        sign * (eval_f64_poly(c, p.beta) - eval_f64_poly_real(c, -1.0)) / pow_u(p.u, s)
    })
}

/// `U(½u, -√(2u)ẑ)`, exponential form, for `ẑ` in the closed upper half-plane away from `ẑ = i`.
pub fn eval_u_negarg(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::TurningPoint)?;
    let s = shifted_series(&p, tables, checked_order(tables, opts), Family::E, true);
    let log = log_prefactor(u) - 0.25 * p.log_q + p.u_xi + s.sum;
    Ok(LgValue { value: ScaledValue::from_log(log), converged: s.converged })
}

/// `U(-½u, -i√(2u)ẑ)`, the solution recessive at `ẑ = i∞`.
pub fn eval_u_rot(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::Segment)?;
    let s = shifted_series(&p, tables, checked_order(tables, opts), Family::E, false);
    let log = -log_prefactor(u) + I * (0.25 * (u - 1.0) * PI) - 0.25 * p.log_q - p.u_xi + s.sum;
    Ok(LgValue { value: ScaledValue::from_log(log), converged: s.converged })
}

/// `U'(½u, -√(2u)ẑ)`.
pub fn eval_uprime_negarg(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::TurningPoint)?;
    let s = shifted_series(&p, tables, checked_order(tables, opts), Family::Etilde, false);
    let log = Complex64::new(0.5f64.ln(), PI) + log_prefactor(u) + 0.25 * p.log_q + p.u_xi + s.sum;
    Ok(LgValue { value: ScaledValue::from_log(log), converged: s.converged })
}

/// `U'(-½u, -i√(2u)ẑ)`.
pub fn eval_uprime_rot(u: f64, zhat: Complex64, tables: &LgCoeffTables, opts: &LgOptions) -> Result<LgValue, LgError> {
    let p = prepare(u, zhat_to_z(u, zhat), opts, Exclusion::Segment)?;
    let s = shifted_series(&p, tables, checked_order(tables, opts), Family::Etilde, true);
    let log = Complex64::new(0.5f64.ln(), PI) - log_prefactor(u) + I * (0.25 * (u + 1.0) * PI)
        + 0.25 * p.log_q
        - p.u_xi
        + s.sum;
    Ok(LgValue { value: ScaledValue::from_log(log), converged: s.converged })
}

/// Expansion of `√(2π)/Γ(½u+½) · (u/2e)^{u/2}` from either coefficient family.
pub fn gamma_ratio(u: f64, tables: &LgCoeffTables, family: Family) -> f64 {
    let at = match family {
        Family::E => -1.0,
        Family::Etilde => 1.0,
    };
    let s = series(odd(tables.order()), |s| {
        Complex64::new(eval_f64_poly_real(tables.float(family, s), at) / pow_u(u, s), 0.0)
    });
    (2.0 * s.sum.re).exp()
}
