//! Absolute values of `U(a,z)` and `U'(a,z)` in the left half-plane.
//!
//! The default route integrates the differential equation out of the origin:
//! first to the turning point, then along the anti-Stokes line emanating
//! from it (where neither solution dominates), and finally along an arc to
//! the target. For `a ≥ a_lg` and points well away from the axes the
//! Liouville-Green expansions are used instead.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::coeffs::LgCoeffTables;
use crate::error::EvalError;
use crate::lg::{self, LgOptions};
use crate::scaled::ScaledValue;
use crate::taylor::{self, Propagator};

/// Limit for `|z|` when `Re z > 0`.
pub const RIGHT_HALF_RADIUS: f64 = 30.0;
const HERMITE_TOL: f64 = 1e-12;
const RESCALE_HI: f64 = 1e150;
const RESCALE_LO: f64 = 1e-150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub taylor_order: usize,
    pub step_scale: f64,
    /// Smallest `a` for which the expansions are tried.
    pub a_lg: f64,
    /// Both `|Re z|` and `|Im z|` must exceed this for the expansions.
    pub lg_gate: f64,
    pub lg: LgOptions,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            taylor_order: taylor::DEFAULT_ORDER,
            step_scale: taylor::DEFAULT_STEP_SCALE,
            a_lg: 18.0,
            lg_gate: 15.0,
            lg: LgOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    OriginSeries,
    LiouvilleGreen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfValue {
    pub u: ScaledValue,
    pub uprime: ScaledValue,
    pub method: Method,
}

impl PcfValue {
    /// `U/U'`
    pub fn quotient(&self) -> Complex64 {
        self.u.ratio(&self.uprime)
    }
}

/// Integration route out of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Turning point, anti-Stokes line, arc.
    AntiStokes,
    /// Ray `arg z = 3π/4`, then arc.
    RayArc,
    /// Straight segment.
    Straight,
}

/// True when `a = -k + ½` for some integer `k ≥ 1`.
pub fn is_hermite(a: f64) -> bool {
    let k = 0.5 - a;
    k >= 1.0 - HERMITE_TOL && (k - k.round()).abs() <= HERMITE_TOL
}

/// `(sign, ln|1/Γ(x)|)`; the sign is 0 at the poles.
fn log_recip_gamma(x: f64) -> (f64, f64) {
    if x <= 0.0 && x == x.floor() {
        return (0.0, f64::NEG_INFINITY);
    }
    let (lg, sign) = libm::lgamma_r(x);
    (sign as f64, -lg)
}

/// `U(a,0)` and `U'(a,0)` in log-scaled form.
pub fn origin_values_scaled(a: f64) -> (ScaledValue, ScaledValue) {
    let half_ln_pi = 0.5 * PI.ln();
    let ln2 = std::f64::consts::LN_2;
    let (s0, l0) = log_recip_gamma(0.75 + 0.5 * a);
    let (s1, l1) = log_recip_gamma(0.25 + 0.5 * a);
    let u0 = if s0 == 0.0 {
        ScaledValue::ZERO
    } else {
        ScaledValue::new(Complex64::new(s0, 0.0), half_ln_pi - (0.5 * a + 0.25) * ln2 + l0)
    };
    let u1 = if s1 == 0.0 {
        ScaledValue::ZERO
    } else {
        ScaledValue::new(Complex64::new(-s1, 0.0), half_ln_pi - (0.5 * a - 0.25) * ln2 + l1)
    };
    (u0, u1)
}

/// `U(a,0)` and `U'(a,0)`.
pub fn origin_values(a: f64) -> (f64, f64) {
    let (u0, u1) = origin_values_scaled(a);
    (u0.to_complex().re, u1.to_complex().re)
}

/// Turning point on the zero-string side and the initial direction of its anti-Stokes line.
pub fn turning_point(a: f64) -> (Complex64, f64) {
    if a > 0.0 {
        (Complex64::new(0.0, 2.0 * a.sqrt()), 5.0 * PI / 6.0)
    } else if a < 0.0 {
        (Complex64::new(-2.0 * (-a).sqrt(), 0.0), 2.0 * PI / 3.0)
    } else {
        (Complex64::new(0.0, 0.0), 3.0 * FRAC_PI_4)
    }
}

/// Taylor integration with running rescaling of `(y, y')`.
struct Walker {
    prop: Propagator,
    z: Complex64,
    y: Complex64,
    yp: Complex64,
    log_scale: f64,
}

impl Walker {
    fn start(prop: Propagator, a: f64) -> Self {
        let (u0, u1) = origin_values_scaled(a);
        let e = u0.exponent().max(u1.exponent());
        let y = ScaledValue::new(u0.mantissa(), u0.exponent() - e).to_complex();
        let yp = ScaledValue::new(u1.mantissa(), u1.exponent() - e).to_complex();
        Self { prop, z: Complex64::new(0.0, 0.0), y, yp, log_scale: e }
    }

    fn rescale(&mut self) {
        let m = self.y.norm().max(self.yp.norm());
        if m > RESCALE_HI || (m < RESCALE_LO && m > 0.0) {
            self.y /= m;
            self.yp /= m;
            self.log_scale += m.ln();
        }
    }

    fn step(&mut self, h: Complex64) -> Result<(), EvalError> {
        (self.y, self.yp) = self.prop.step(self.z, self.y, self.yp, h)?;
        self.z += h;
        self.rescale();
        Ok(())
    }

    fn line_to(&mut self, target: Complex64) -> Result<(), EvalError> {
        loop {
            let rest = target - self.z;
            let len = rest.norm();
            let hm = self.prop.h_max(self.z);
            if len <= hm {
                self.step(rest)?;
                self.z = target;
                return Ok(());
            }
            self.step(rest * (hm / len))?;
        }
    }

    /// Arc with linearly interpolated radius and argument.
    fn arc_to(&mut self, target: Complex64) -> Result<(), EvalError> {
        let (r0, th0) = self.z.to_polar();
        let (r1, th1) = target.to_polar();
        let hm = self.prop.h_max(target).min(self.prop.h_max(self.z));
        let length = (th1 - th0).abs() * r0.max(r1) + (r1 - r0).abs();
        let n = (length / hm).floor() as usize + 1;
        for k in 1..=n {
            let t = k as f64 / n as f64;
            let p = Complex64::from_polar(r0 + (r1 - r0) * t, th0 + (th1 - th0) * t);
            self.line_to(if k == n { target } else { p })?;
        }
        Ok(())
    }

    /// Follows the anti-Stokes line from the turning point until `|z| ≥ radius`.
    fn trace_anti_stokes(&mut self, a: f64, radius: f64) -> Result<(), EvalError> {
        let (tp, dir) = turning_point(a);
        self.line_to(tp)?;
        let lead = (0.3 * tp.norm().max(1.0)).min(0.3);
        self.line_to(tp + Complex64::from_polar(lead, dir))?;
        let mut prev: Option<Complex64> = None;
        while self.z.norm() < radius {
            let z = self.z;
            let mut s = (0.25 * z * z + a).sqrt();
            if let Some(p) = prev {
                if (s - p).norm() > (s + p).norm() {
                    s = -s;
                }
            }
            prev = Some(s);
            let mut d = Complex64::i() * s.conj() / s.norm();
            if (d * z.conj()).re < 0.0 {
                d = -d;
            }
            self.line_to(z + 0.5 * self.prop.h_max(z) * d)?;
        }
        Ok(())
    }

    fn finish(self) -> PcfValue {
        PcfValue {
            u: ScaledValue::new(self.y, self.log_scale),
            uprime: ScaledValue::new(self.yp, self.log_scale),
            method: Method::OriginSeries,
        }
    }
}

fn conj_value(v: PcfValue) -> PcfValue {
    let c = |s: ScaledValue| ScaledValue::new(s.mantissa().conj(), s.exponent());
    PcfValue { u: c(v.u), uprime: c(v.uprime), method: v.method }
}

fn check_region(z: Complex64) -> Result<(), EvalError> {
    if !z.is_finite() || (z.re > 0.0 && z.norm() > RIGHT_HALF_RADIUS) {
        return Err(EvalError::Region(z));
    }
    Ok(())
}

/// Taylor integration from the origin along the chosen route.
pub fn eval_with_path(a: f64, z: Complex64, cfg: &EvalConfig, path: PathKind) -> Result<PcfValue, EvalError> {
    check_region(z)?;
    if z.im < 0.0 {
        return eval_with_path(a, z.conj(), cfg, path).map(conj_value);
    }
    let prop = Propagator::new(a, cfg.taylor_order, cfg.step_scale);
    let mut w = Walker::start(prop, a);
    let r = z.norm();
    match path {
        PathKind::Straight => w.line_to(z)?,
        PathKind::RayArc => {
            w.line_to(Complex64::from_polar(r, 3.0 * FRAC_PI_4))?;
            w.arc_to(z)?;
        }
        PathKind::AntiStokes => {
            let (tp, _) = turning_point(a);
            if r <= tp.norm() + 0.5 || z.re > 0.0 {
                w.line_to(z)?;
            } else {
                w.trace_anti_stokes(a, r)?;
                w.arc_to(z)?;
            }
        }
    }
    let v = w.finish();
    if !v.u.is_finite() || !v.uprime.is_finite() {
        return Err(EvalError::NonFinite(z));
    }
    Ok(v)
}

/// Whether the expansions are used at `(a, z)`.
pub fn uses_lg(a: f64, z: Complex64, cfg: &EvalConfig) -> bool {
    a >= cfg.a_lg && z.re.abs() > cfg.lg_gate && z.im.abs() > cfg.lg_gate && z.re < 0.0
}

/// Liouville-Green values at a left half-plane point, `None` when the expansions do not apply.
pub fn eval_lg(a: f64, z: Complex64, cfg: &EvalConfig, tables: &LgCoeffTables) -> Option<PcfValue> {
    if z.im < 0.0 {
        return eval_lg(a, z.conj(), cfg, tables).map(conj_value);
    }
    let (u, up) = lg::eval_pair_at(a, z, tables, &cfg.lg).ok()?;
    (u.converged && up.converged).then_some(PcfValue {
        u: u.value,
        uprime: up.value,
        method: Method::LiouvilleGreen,
    })
}

/// `U(a,z)` and `U'(a,z)`.
pub fn eval(a: f64, z: Complex64, cfg: &EvalConfig) -> Result<PcfValue, EvalError> {
    if uses_lg(a, z, cfg) {
        if let Some(v) = eval_lg(a, z, cfg, LgCoeffTables::shared()) {
            return Ok(v);
        }
    }
    eval_with_path(a, z, cfg, PathKind::AntiStokes)
}

/// `|U(a,z) / (z U'(a,z))|`, the first-order relative error of a computed zero.
pub fn relative_error_estimate(a: f64, z: Complex64, cfg: &EvalConfig) -> Result<f64, EvalError> {
    let v = eval(a, z, cfg)?;
    Ok((v.quotient() / z).norm())
}
