//! Chain continuation along the string of second-quadrant zeros.
//!
//! A first zero near the corner `-L+iL` is estimated and refined, then each
//! zero is displaced by `π/√A` toward the next one, where `A = -z²/4 - a`,
//! and polished with the fixed-point map
//! `T(z) = z - arctan(√A · U/U') / √A`. `U/U'` comes from integrating the
//! equation from the previous zero with `(U, U') = (0, 1)` there.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::ChainError;
use crate::lg::LgOptions;
use crate::pcf::{self, is_hermite, EvalConfig};
use crate::taylor::{self, Propagator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainConfig {
    /// Relative tolerance of the fixed-point iteration.
    pub eps: f64,
    /// Distance from the terminal axis at which the chain stops.
    pub delta: f64,
    pub taylor_order: usize,
    pub lg_order: usize,
    pub a_lg: f64,
    pub max_inner_iters: usize,
    /// Cap for the refinement of the first estimate, which starts farther away.
    pub max_refine_iters: usize,
    pub max_zeros: usize,
    /// `c` in the Taylor step bound `c / max(|z|/2, √|a|, c)`.
    pub step_scale: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            eps: 1e-14,
            delta: 1e-4,
            taylor_order: taylor::DEFAULT_ORDER,
            lg_order: crate::coeffs::DEFAULT_ORDER,
            a_lg: 18.0,
            max_inner_iters: 20,
            max_refine_iters: 100,
            max_zeros: 10_000_000,
            step_scale: taylor::DEFAULT_STEP_SCALE,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<(), ChainError> {
        let bad = |m: &str| Err(ChainError::Config(m.to_string()));
        if !(self.eps > 0.0 && self.eps <= 1e-8) {
            return bad("eps must lie in (0, 1e-8]");
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad("delta must lie in (0, 1)");
        }
        if self.taylor_order < 4 {
            return bad("taylor order must be at least 4");
        }
        if !(1..=crate::coeffs::DEFAULT_ORDER).contains(&self.lg_order) {
            return bad("lg order must lie in 1..=12");
        }
        if self.max_inner_iters == 0 || self.max_refine_iters == 0 || self.max_zeros == 0 {
            return bad("iteration caps must be positive");
        }
        if !(self.step_scale > 0.0) {
            return bad("step scale must be positive");
        }
        Ok(())
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            taylor_order: self.taylor_order,
            step_scale: self.step_scale,
            a_lg: self.a_lg,
            lg: LgOptions { order: self.lg_order, ..LgOptions::default() },
            ..EvalConfig::default()
        }
    }

    fn propagator(&self, a: f64) -> Propagator {
        Propagator::new(a, self.taylor_order, self.step_scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub index: usize,
    pub z: Complex64,
    /// `NaN` until verified.
    pub est_rel_error: f64,
    pub inner_iterations: usize,
}

/// Relative changes `|z_{k+1} - z_k| / |z_k|` of every fixed-point run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainTrace {
    pub refine: Vec<f64>,
    pub inner: Vec<Vec<f64>>,
}

/// `√(-z²/4 - a)`, principal branch.
pub fn sqrt_a(a: f64, z: Complex64) -> Result<Complex64, ChainError> {
    let big_a = -0.25 * z * z - a;
    if big_a.norm() < 1e-20 {
        return Err(ChainError::TurningPoint(z));
    }
    Ok(big_a.sqrt())
}

/// `H⁺(z) = z + π/√A(z)`.
pub fn displace(a: f64, z: Complex64) -> Result<Complex64, ChainError> {
    Ok(z + PI / sqrt_a(a, z)?)
}

/// `H⁻(z) = z - π/√A(z)`, one zero outward.
pub fn displace_back(a: f64, z: Complex64) -> Result<Complex64, ChainError> {
    Ok(z - PI / sqrt_a(a, z)?)
}

/// `T(z) = z - arctan(√A·Q)/√A` with `Q = U/U'`.
pub fn fixed_point_t(a: f64, z: Complex64, q: Complex64) -> Result<Complex64, ChainError> {
    let s = sqrt_a(a, z)?;
    let next = z - (s * q).atan() / s;
    if !next.is_finite() {
        return Err(ChainError::ArctanSingular(z));
    }
    Ok(next)
}

/// `(m, z_m)`: index and leading-order location of the outermost zero in the domain.
pub fn first_zero_estimate(a: f64, l: f64) -> (usize, Complex64) {
    let corner = Complex64::new(-l, l);
    let tau = Complex64::i() * corner * corner / 2.0;
    let abs_a = a.abs();
    let m = ((tau.re / PI - 0.5 + abs_a) / 2.0).floor().max(0.0) as usize;
    (m, zero_estimate(a, m))
}

/// `e^{3πi/4} √(2τ_m)` for a given index.
pub fn zero_estimate(a: f64, m: usize) -> Complex64 {
    let abs_a = a.abs();
    let im = libm::lgamma(0.5 + abs_a) - 0.5 * PI.ln() - (abs_a + 0.5) * std::f64::consts::LN_2;
    let tau_m = Complex64::new((2.0 * m as f64 + 0.5 - abs_a) * PI, im);
    Complex64::from_polar(1.0, 3.0 * FRAC_PI_4) * (2.0 * tau_m).sqrt()
}

fn refine_traced(a: f64, z0: Complex64, cfg: &ChainConfig, log: &mut Vec<f64>) -> Result<(Complex64, usize), ChainError> {
    let ecfg = cfg.eval_config();
    let mut z = z0;
    for it in 1..=cfg.max_refine_iters {
        let q = pcf::eval(a, z, &ecfg)?.quotient();
        let next = fixed_point_t(a, z, q)?;
        let d = (next - z).norm() / next.norm();
        log.push(d);
        z = next;
        if d <= cfg.eps {
            return Ok((z, it));
        }
    }
    Err(ChainError::NoConvergence { index: 0, z })
}

/// Fixed-point refinement of an estimate using absolute evaluation of `U/U'`.
pub fn refine_first_zero(a: f64, z0: Complex64, cfg: &ChainConfig) -> Result<Complex64, ChainError> {
    refine_traced(a, z0, cfg, &mut Vec::new()).map(|(z, _)| z)
}

#[derive(Clone, Copy)]
enum Direction {
    Inward,
    Outward,
}

/// Next zero along the chain from the zero `from`.
fn next_zero(
    a: f64,
    from: Complex64,
    dir: Direction,
    prop: &Propagator,
    cfg: &ChainConfig,
    index: usize,
    log: &mut Vec<f64>,
) -> Result<(Complex64, usize), ChainError> {
    let mut z = match dir {
        Direction::Inward => displace(a, from)?,
        Direction::Outward => displace_back(a, from)?,
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for it in 1..=cfg.max_inner_iters {
        let (y, yp) = prop.segment(from, zero, one, z)?;
        let next = fixed_point_t(a, z, y / yp)?;
        let d = (next - z).norm() / next.norm();
        log.push(d);
        z = next;
        if d <= cfg.eps {
            return Ok((z, it));
        }
    }
    Err(ChainError::NoConvergence { index, z })
}

/// Side of the terminal axis reached by the inward chain.
fn is_terminal(a: f64, z: Complex64, delta: f64) -> bool {
    if a < 0.0 {
        z.im < delta
    } else {
        z.re > -delta
    }
}

/// Whether `next` continues inward from `prev`.
fn moves_inward(a: f64, prev: Complex64, next: Complex64) -> bool {
    if a < 0.0 {
        next.im < prev.im
    } else {
        next.re > prev.re
    }
}

fn in_domain(a: f64, l: f64, z: Complex64) -> bool {
    if a < 0.0 {
        (0.0..=l).contains(&z.im) && z.re < 0.0
    } else {
        (-l..=0.0).contains(&z.re) && z.im > 0.0
    }
}

/// Zeros in the domain, outermost first, together with the iteration log.
pub fn run_chain_traced(a: f64, l: f64, cfg: &ChainConfig) -> Result<(Vec<ZeroRecord>, ChainTrace), ChainError> {
    cfg.validate()?;
    if is_hermite(a) {
        return Err(ChainError::Hermite(a));
    }
    if !(l > 0.0) || !a.is_finite() || !l.is_finite() {
        return Err(ChainError::Config("L must be positive and a finite".into()));
    }
    let mut trace = ChainTrace::default();
    let (m, estimate) = first_zero_estimate(a, l);
    if m == 0 {
        return Ok((Vec::new(), trace));
    }
    let (first, refine_iters) = refine_traced(a, estimate, cfg, &mut trace.refine)?;
    let prop = cfg.propagator(a);

    // inward from the refined zero
    let mut chain = vec![(first, refine_iters)];
    let mut terminal = false;
    loop {
        if chain.len() > cfg.max_zeros {
            return Err(ChainError::CapExceeded(cfg.max_zeros));
        }
        let prev = chain.last().expect("nonempty").0;
        let mut log = Vec::new();
        let step = next_zero(a, prev, Direction::Inward, &prop, cfg, chain.len(), &mut log);
        trace.inner.push(log);
        let (next, its) = match step {
            Ok(v) => v,
            // the iterate left the string past its inner end
            Err(ChainError::NoConvergence { z, .. })
                if is_terminal(a, z, cfg.delta) || !moves_inward(a, prev, z) =>
            {
                break
            }
            Err(e) => return Err(e),
        };
        if !moves_inward(a, prev, next) {
            break;
        }
        chain.push((next, its));
        if is_terminal(a, next, cfg.delta) {
            terminal = true;
            break;
        }
    }
    if terminal {
        chain.pop();
    }

    // align so that the outermost zero carries the index m
    let label = chain.len();
    if label > m {
        chain.drain(..label - m);
    } else {
        let mut outer = Vec::with_capacity(m - label);
        let mut from = chain[0].0;
        for k in 0..m - label {
            if chain.len() + outer.len() > cfg.max_zeros {
                return Err(ChainError::CapExceeded(cfg.max_zeros));
            }
            let mut log = Vec::new();
            let (z, its) = next_zero(a, from, Direction::Outward, &prop, cfg, k, &mut log)?;
            trace.inner.push(log);
            outer.push((z, its));
            from = z;
        }
        outer.reverse();
        outer.extend(chain);
        chain = outer;
    }

    let records = chain
        .into_iter()
        .filter(|(z, _)| in_domain(a, l, *z))
        .enumerate()
        .map(|(index, (z, inner_iterations))| ZeroRecord { index, z, est_rel_error: f64::NAN, inner_iterations })
        .collect();
    Ok((records, trace))
}

/// Zeros of `U(a, ·)` in the domain of size `L`, outermost first.
pub fn run_chain(a: f64, l: f64, cfg: &ChainConfig) -> Result<Vec<ZeroRecord>, ChainError> {
    run_chain_traced(a, l, cfg).map(|(r, _)| r)
}

/// Fills `est_rel_error` by independent evaluation; failed evaluations give `+∞`.
pub fn verify_zeros(a: f64, zeros: &[ZeroRecord], cfg: &ChainConfig) -> Vec<ZeroRecord> {
    let ecfg = cfg.eval_config();
    zeros
        .par_iter()
        .map(|r| ZeroRecord {
            est_rel_error: pcf::relative_error_estimate(a, r.z, &ecfg).unwrap_or(f64::INFINITY),
            ..*r
        })
        .collect()
}

/// Least-squares exponent `p` in `Δ_{k+1} ≈ C Δ_k^p` over all usable pairs.
///
/// Pairs are usable when the later change stays above `floor`; `None` when
/// fewer than `min_pairs` remain or the `Δ_k` span less than a decade.
pub fn convergence_order(runs: &[Vec<f64>], floor: f64, min_pairs: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = runs
        .iter()
        .flat_map(|r| r.windows(2).filter(|w| w[1] > floor && w[0] > 0.0).map(|w| (w[0].ln(), w[1].ln())))
        .collect();
    if pts.len() < min_pairs {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    if hi - lo < std::f64::consts::LN_10 {
        return None;
    }
    Some(sxy / sxx)
}

/// Trailing strictly decreasing part of a run of changes, cut at the first value `≤ floor`.
pub fn contracting_tail(deltas: &[f64], floor: f64) -> &[f64] {
    let end = deltas.iter().position(|d| !(*d > floor)).unwrap_or(deltas.len());
    let v = &deltas[..end];
    let mut start = v.len().saturating_sub(1);
    while start > 0 && v[start - 1] > v[start] {
        start -= 1;
    }
    &v[start..]
}

/// Fitted order of each run in `trace` whose contracting tail has at least three changes spanning a decade.
pub fn run_orders(trace: &ChainTrace, floor: f64) -> Vec<f64> {
    std::iter::once(&trace.refine)
        .chain(&trace.inner)
        .filter_map(|r| {
            let t = contracting_tail(r, floor);
            (t.len() >= 3).then(|| convergence_order(&[t.to_vec()], 0.0, 2)).flatten()
        })
        .collect()
}
