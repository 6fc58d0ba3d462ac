//! Complex Airy function, its negative real zeros, and the combination
//! `𝒜i(a,z) = 2e^{-πi/6} cos(aπ) Ai(ze^{-2πi/3}) + i e^{aπi} Ai(z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::AiryError;

const AI0: f64 = 0.355_028_053_887_817_239_3;
const AIP0: f64 = -0.258_819_403_792_806_798_4;
const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_RADIUS: f64 = 9.0;
const ODE_ORDER: usize = 40;

/// First ten zeros `a_1 > a_2 > …` of `Ai`.
pub const AIRY_ZEROS: [f64; 10] = [
    -2.338_107_410_459_767_038_5,
    -4.087_949_444_130_970_616_6,
    -5.520_559_828_095_551_059_1,
    -6.786_708_090_071_758_998_8,
    -7.944_133_587_120_853_123_1,
    -9.022_650_853_340_980_380_2,
    -10.040_174_341_558_085_930_6,
    -11.008_524_303_733_262_893_2,
    -11.936_015_563_236_262_517_0,
    -12.828_776_752_865_757_200_4,
];

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// One Taylor step of `w'' = z w` from `z0` by `h`.
fn ode_step(z0: Complex64, w: Complex64, wp: Complex64, h: Complex64) -> (Complex64, Complex64) {
    let mut t = [Complex64::new(0.0, 0.0); ODE_ORDER + 2];
    t[0] = w;
    t[1] = wp;
    t[2] = z0 * w / 2.0;
    for k in 1..ODE_ORDER {
        t[k + 2] = (z0 * t[k] + t[k - 1]) / ((k + 2) * (k + 1)) as f64;
    }
    let mut y = Complex64::new(0.0, 0.0);
    let mut yp = Complex64::new(0.0, 0.0);
    for k in (0..=ODE_ORDER).rev() {
        y = y * h + t[k];
        yp = yp * h + (k + 1) as f64 * t[k + 1];
    }
    (y, yp)
}

fn ode_segment(from: Complex64, mut w: Complex64, mut wp: Complex64, to: Complex64) -> (Complex64, Complex64) {
    let mut z = from;
    loop {
        let rest = to - z;
        let hm = 1.5 / z.norm().sqrt().max(1.0);
        let len = rest.norm();
        if len <= hm {
            return ode_step(z, w, wp, rest);
        }
        let h = rest * (hm / len);
        (w, wp) = ode_step(z, w, wp, h);
        z += h;
    }
}

/// Maclaurin series for `Ai` and `Ai'`.
fn maclaurin(z: Complex64) -> (Complex64, Complex64) {
    let z3 = z * z * z;
    let mut f = Complex64::new(1.0, 0.0);
    let mut g = z;
    let (mut sf, mut sg) = (f, g);
    let (mut sfp, mut sgp) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let z2 = z * z;
    for k in 0..60 {
        let kf = k as f64;
        sfp += f * z2 / (3.0 * kf + 2.0);
        sgp += g * z2 / (3.0 * kf + 3.0);
        f = f * z3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        g = g * z3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        sf += f;
        sg += g;
        if f.norm() + g.norm() < 1e-18 * (sf.norm() + sg.norm()) {
            break;
        }
    }
    (AI0 * sf + AIP0 * sg, AI0 * sfp + AIP0 * sgp)
}

/// Poincaré expansion, accurate for `|z| ≥ 9`, `|arg z| ≤ 2π/3`.
fn asymptotic(z: Complex64) -> (Complex64, Complex64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let mut u = 1.0f64;
    let mut su = Complex64::new(1.0, 0.0);
    let mut sv = Complex64::new(1.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..40 {
        let kf = k as f64;
        // u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zk *= -1.0 / zeta;
        let term = u * zk;
        if term.norm() > last {
            break;
        }
        last = term.norm();
        su += term;
        sv += v * zk;
        if last < 1e-17 {
            break;
        }
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = z.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn asymptotic_any(z: Complex64) -> (Complex64, Complex64) {
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        return asymptotic(z);
    }
    let w = omega();
    let (a1, d1) = asymptotic(z * w.conj());
    let (a2, d2) = asymptotic(z * w);
    (-w.conj() * a1 - w * a2, -(w.conj() * w.conj()) * d1 - (w * w) * d2)
}

/// `(Ai(z), Ai'(z))`.
pub fn ai_pair(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return maclaurin(z);
    }
    if r >= ASYMPTOTIC_RADIUS {
        return asymptotic_any(z);
    }
    if z.arg().abs() <= PI / 3.0 {
        let start = z * (ASYMPTOTIC_RADIUS / r);
        let (w, wp) = asymptotic(start);
        ode_segment(start, w, wp, z)
    } else {
        let start = z * (SERIES_RADIUS / r);
        let (w, wp) = maclaurin(start);
        ode_segment(start, w, wp, z)
    }
}

pub fn ai(z: Complex64) -> Complex64 {
    ai_pair(z).0
}

pub fn ai_prime(z: Complex64) -> Complex64 {
    ai_pair(z).1
}

/// `T(t)` with its first six terms.
fn t_expansion(t: f64) -> f64 {
    let t2 = t.powi(-2);
    let c = [
        1.0,
        5.0 / 48.0,
        -5.0 / 36.0,
        77_125.0 / 82_944.0,
        -108_056_875.0 / 6_967_296.0,
        162_375_596_875.0 / 334_430_208.0,
    ];
    t.powf(2.0 / 3.0) * c.iter().rev().fold(0.0, |acc, &x| acc * t2 + x)
}

/// `a_m`, the `m`-th negative zero of `Ai`.
pub fn airy_zero(m: usize) -> Result<f64, AiryError> {
    match m {
        0 => Err(AiryError::ZeroIndex),
        1..=10 => Ok(AIRY_ZEROS[m - 1]),
        _ => Ok(airy_zero_expansion(m)),
    }
}

/// `-T(3π(4m-1)/8)`, for any `m ≥ 1`.
pub fn airy_zero_expansion(m: usize) -> f64 {
    -t_expansion(3.0 * PI * (4.0 * m as f64 - 1.0) / 8.0)
}

fn cos_pi(a: f64) -> f64 {
    let r = a.rem_euclid(2.0);
    if (r - 0.5).abs() < f64::EPSILON || (r - 1.5).abs() < f64::EPSILON {
        0.0
    } else {
        (PI * r).cos()
    }
}

fn sin_pi(a: f64) -> f64 {
    cos_pi(a - 0.5)
}

fn combo_weights(a: f64) -> (Complex64, Complex64) {
    let first = 2.0 * Complex64::from_polar(1.0, -PI / 6.0) * cos_pi(a);
    let second = Complex64::i() * Complex64::new(cos_pi(a), sin_pi(a));
    (first, second)
}

/// `(𝒜i(a,z), ∂_z 𝒜i(a,z))`.
pub fn combo_ai_pair(a: f64, z: Complex64) -> (Complex64, Complex64) {
    let (c1, c2) = combo_weights(a);
    let rot = Complex64::from_polar(1.0, -2.0 * PI / 3.0);
    let (a1, d1) = if c1 == Complex64::new(0.0, 0.0) {
        (c1, c1)
    } else {
        ai_pair(z * rot)
    };
    let (a0, d0) = ai_pair(z);
    (c1 * a1 + c2 * a0, c1 * rot * d1 + c2 * d0)
}

pub fn combo_ai(a: f64, z: Complex64) -> Complex64 {
    combo_ai_pair(a, z).0
}

/// Newton iteration on `𝒜i(a, ·)` from `guess`.
pub fn combo_zero_refine(a: f64, guess: Complex64) -> Result<Complex64, AiryError> {
    let mut z = guess;
    let mut settled = false;
    for _ in 0..30 {
        let (f, fp) = combo_ai_pair(a, z);
        settled = f.norm() < 1e-12 * (fp * z).norm();
        let dz = f / fp;
        if !dz.is_finite() {
            break;
        }
        z -= dz;
        if dz.norm() <= 1e-15 * z.norm() {
            return Ok(z);
        }
    }
    if settled {
        Ok(z)
    } else {
        Err(AiryError::NoConvergence(guess))
    }
}
