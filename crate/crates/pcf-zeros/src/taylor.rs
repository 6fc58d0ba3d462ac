//! Taylor-series propagation of solutions of `y'' = (z²/4 + a) y`.

use num_complex::Complex64;

use crate::error::TaylorError;

pub const DEFAULT_ORDER: usize = 30;
/// Default for `c` in the step bound `|h| ≤ c / max(|z|/2, √|a|, c)`.
pub const DEFAULT_STEP_SCALE: f64 = 3.0;
const TAIL_TOL: f64 = 1e-15;
const MAX_DEPTH: u32 = 6;

/// Expansion point with scaled derivatives `y^(k)(z0)/k!`, `k = 0..=N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorState {
    a: f64,
    z0: Complex64,
    derivs: Vec<Complex64>,
    order: usize,
}

/// Builds the scaled derivatives from `(y(z0), y'(z0))`.
pub fn derivatives_at(
    a: f64,
    z0: Complex64,
    y0: Complex64,
    y1: Complex64,
    order: usize,
) -> Result<TaylorState, TaylorError> {
    if order < 4 {
        return Err(TaylorError::OrderTooLow(order));
    }
    let mut d = vec![Complex64::new(0.0, 0.0); order + 2];
    let c = 0.25 * z0 * z0 + a;
    let half_z = 0.5 * z0;
    d[0] = y0;
    d[1] = y1;
    d[2] = c * y0 / 2.0;
    d[3] = (c * y1 + half_z * y0) / 6.0;
    for k in 2..order {
        let denom = ((k + 2) * (k + 1)) as f64;
        d[k + 2] = (c * d[k] + half_z * d[k - 1] + 0.25 * d[k - 2]) / denom;
    }
    Ok(TaylorState { a, z0, derivs: d, order })
}

impl TaylorState {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `y^(k)(z0)/k!` for `k = 0..=N`.
    pub fn derivs(&self) -> &[Complex64] {
        &self.derivs[..=self.order]
    }

    /// Truncated sums and whether the last retained terms are negligible.
    fn sums(&self, h: Complex64) -> (Complex64, Complex64, bool) {
        let n = self.order;
        let mut y = Complex64::new(0.0, 0.0);
        let mut yp = Complex64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            y = y * h + self.derivs[k];
            yp = yp * h + (k + 1) as f64 * self.derivs[k + 1];
        }
        // the recurrence links terms four apart, so a single trailing term can vanish by accident
        let mut hk = h.powu((n - 3) as u32);
        let mut tail = 0.0;
        for k in n - 3..=n {
            tail += (self.derivs[k] * hk).norm() + ((k + 1) as f64 * self.derivs[k + 1] * hk * h).norm();
            hk *= h;
        }
        let scale = y.norm() + (yp * h).norm();
        (y, yp, scale.is_finite() && tail <= TAIL_TOL * scale)
    }

    /// `(y, y')` at `z0 + h`, subdividing when the series tail is too large.
    pub fn step(&self, h: Complex64) -> Result<(Complex64, Complex64), TaylorError> {
        self.step_depth(h, 0)
    }

    fn step_depth(&self, h: Complex64, depth: u32) -> Result<(Complex64, Complex64), TaylorError> {
        let (y, yp, ok) = self.sums(h);
        if ok {
            return Ok((y, yp));
        }
        if depth >= MAX_DEPTH {
            return Err(TaylorError::StepFailure { z0: self.z0, h });
        }
        let half = 0.5 * h;
        let (ym, ypm) = self.step_depth(half, depth + 1)?;
        let mid = derivatives_at(self.a, self.z0 + half, ym, ypm, self.order)?;
        mid.step_depth(half, depth + 1)
    }
}

/// Free-function form of [`TaylorState::step`].
pub fn step(state: &TaylorState, h: Complex64) -> Result<(Complex64, Complex64), TaylorError> {
    state.step(h)
}

/// Largest step length at `z` for step scale `c`.
pub fn h_max(a: f64, z: Complex64, scale: f64) -> f64 {
    scale / (0.5 * z.norm()).max(a.abs().sqrt()).max(scale)
}

/// Propagation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    pub a: f64,
    pub order: usize,
    pub step_scale: f64,
}

impl Propagator {
    pub fn new(a: f64, order: usize, step_scale: f64) -> Self {
        Self { a, order, step_scale }
    }

    pub fn h_max(&self, z: Complex64) -> f64 {
        h_max(self.a, z, self.step_scale)
    }

    /// One re-expanded step `z → z + h`.
    pub fn step(&self, z: Complex64, y: Complex64, yp: Complex64, h: Complex64) -> Result<(Complex64, Complex64), TaylorError> {
        derivatives_at(self.a, z, y, yp, self.order)?.step(h)
    }

    /// Straight segment `from → to` in steps no longer than `h_max`.
    pub fn segment(
        &self,
        from: Complex64,
        mut y: Complex64,
        mut yp: Complex64,
        to: Complex64,
    ) -> Result<(Complex64, Complex64), TaylorError> {
        let mut z = from;
        loop {
            let rest = to - z;
            let hm = self.h_max(z);
            let len = rest.norm();
            if len <= hm {
                return self.step(z, y, yp, rest);
            }
            let h = rest * (hm / len);
            (y, yp) = self.step(z, y, yp, h)?;
            z += h;
        }
    }

    /// Polyline through `points`, starting at `points[0]` with `(y, yp)`.
    pub fn polyline(
        &self,
        points: &[Complex64],
        mut y: Complex64,
        mut yp: Complex64,
    ) -> Result<(Complex64, Complex64), TaylorError> {
        for w in points.windows(2) {
            (y, yp) = self.segment(w[0], y, yp, w[1])?;
        }
        Ok((y, yp))
    }
}
