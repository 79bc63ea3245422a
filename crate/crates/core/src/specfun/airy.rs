//! Airy function of the first kind and its negative zeros.
//!
//! Maclaurin series on [−1, 1], Poincaré asymptotic expansions for large
//! |x|, and Taylor stepping of `Ai'' = x Ai` in between. The series cancels
//! badly on both sides long before the asymptotic forms are accurate.
//! Positive x is reached leftwards from the asymptotic value, the direction
//! in which Ai dominates; negative x is reached from the exact data at 0.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Ai(0) = 3^(−2/3) / Γ(2/3)
const AI0: f64 = 0.355_028_053_887_817_2;
/// −Ai'(0) = 3^(−1/3) / Γ(1/3)
const AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_MAX: f64 = 1.0;
const SERIES_MIN: f64 = -1.0;
/// Start of the leftward Taylor march; the asymptotic error here is ~e^{−36}.
const ASYMPTOTIC_MIN: f64 = 9.0;
/// Below this the oscillatory asymptotic form is used; error ~e^{−77}.
const ASYMPTOTIC_MAX_NEG: f64 = -15.0;
const TAYLOR_STEP: f64 = 0.25;

/// Ai(x) for finite real x.
pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        f64::NAN
    } else if !(ASYMPTOTIC_MAX_NEG..ASYMPTOTIC_MIN).contains(&x) {
        ai_asymptotic(x)
    } else if x > SERIES_MAX {
        let (y, dy) = ai_and_slope_asymptotic(ASYMPTOTIC_MIN);
        march(ASYMPTOTIC_MIN, y, dy, x)
    } else if x < SERIES_MIN {
        march(0.0, AI0, -AIP0, x)
    } else {
        ai_series(x)
    }
}

/// Ai(x) = Ai(0) f(x) − |Ai'(0)| g(x) with the two even/odd-in-x³ series
/// f = Σ 3^k (1/3)_k x^{3k}/(3k)!, g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!.
pub(crate) fn ai_series(x: f64) -> f64 {
    let x3 = x * x * x;
    let mut f_sum = 1.0;
    let mut f_term = 1.0;
    let mut g_sum = x;
    let mut g_term = x;
    for k in 1..200 {
        let k3 = (3 * k) as f64;
        f_term *= x3 / (k3 * (k3 - 1.0));
        g_term *= x3 / ((k3 + 1.0) * k3);
        f_sum += f_term;
        g_sum += g_term;
        if f_term.abs() <= 1e-17 * f_sum.abs().max(1e-300) && g_term.abs() <= 1e-17 * g_sum.abs().max(1e-300) {
            break;
        }
    }
    AI0 * f_sum - AIP0 * g_sum
}

/// (Ai, Ai') at `x ≥ ASYMPTOTIC_MIN`.
fn ai_and_slope_asymptotic(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (mut u, mut value_sum, mut slope_sum) = (1.0f64, 1.0f64, 1.0f64);
    let mut previous = 1.0f64;
    for k in 1..64 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let term = u / zeta.powi(k);
        if term.abs() >= previous.abs() {
            break;
        }
        previous = term;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * term;
        value_sum += sign * term;
        slope_sum += sign * v;
        if term.abs() < 1e-17 {
            break;
        }
    }
    let scale = (-zeta).exp() / (2.0 * PI.sqrt());
    (scale * x.powf(-0.25) * value_sum, -scale * x.powf(0.25) * slope_sum)
}

/// Carries (Ai, Ai') from `start` to `x`; returns Ai(x).
///
/// Full steps land on the fixed nodes `start ± k·TAYLOR_STEP` and one short
/// step finishes at `x`, so nearby arguments share their rounding history
/// and the result stays smooth at the ulp level.
fn march(start: f64, mut y: f64, mut dy: f64, x: f64) -> f64 {
    let direction = (x - start).signum();
    let full = ((x - start).abs() / TAYLOR_STEP).round() as usize;
    let mut c = start;
    for k in 1..=full {
        let next = start + direction * TAYLOR_STEP * k as f64;
        (y, dy) = taylor_step(c, y, dy, next - c);
        c = next;
    }
    taylor_step(c, y, dy, x - c).0
}

/// (Ai, Ai') at `c + d` from their values at `c`.
fn taylor_step(c: f64, y: f64, dy: f64, d: f64) -> (f64, f64) {
    // (n+2)(n+1) a_{n+2} = c a_n + a_{n−1}
    let (mut a_nm1, mut a_n, mut a_np1) = (0.0f64, y, dy);
    let (mut value, mut slope) = (y + dy * d, dy);
    let mut power = 1.0f64;
    let mut quiet = 0;
    for n in 0..200 {
        let a_np2 = (c * a_n + a_nm1) / ((n + 2) * (n + 1)) as f64;
        power *= d;
        let add_slope = (n + 2) as f64 * a_np2 * power;
        let add_value = a_np2 * power * d;
        value += add_value;
        slope += add_slope;
        (a_nm1, a_n, a_np1) = (a_n, a_np1, a_np2);
        // single coefficients vanish at c = 0; require three small in a row
        if add_value.abs() + add_slope.abs() <= 1e-18 * (value.abs() + slope.abs()) {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, slope)
}

/// Asymptotic expansion for large |x|, truncated at its smallest term.
pub(crate) fn ai_asymptotic(x: f64) -> f64 {
    let z = x.abs();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    // u_k/ζ^k terms of the common asymptotic series
    let mut terms = Vec::with_capacity(64);
    let mut u = 1.0;
    let mut term = 1.0f64;
    terms.push(1.0);
    for k in 1..64 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let next = u / zeta.powi(k);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        terms.push(next);
        if next.abs() < 1e-17 {
            break;
        }
    }
    if x > 0.0 {
        let sum: f64 = terms
            .iter()
            .enumerate()
            .map(|(k, t)| if k % 2 == 0 { *t } else { -*t })
            .sum();
        (-zeta).exp() / (2.0 * PI.sqrt() * z.powf(0.25)) * sum
    } else {
        let mut even = 0.0;
        let mut odd = 0.0;
        for (k, t) in terms.iter().enumerate() {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * t;
            } else {
                odd += sign * t;
            }
        }
        let phase = zeta - FRAC_PI_4;
        (phase.cos() * even + phase.sin() * odd) / (PI.sqrt() * z.powf(0.25))
    }
}

/// The n-th negative zero of Ai (n ≥ 1), λ₁ ≈ −2.338107.
///
/// Bisection on a bracket around the asymptotic estimate
/// `−t^{2/3}(1 + 5/(48t²))`, `t = 3π(4n−1)/8`; no derivative needed.
pub fn airy_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", "Airy zeros are indexed from 1"));
    }
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let estimate = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
    // a quarter of the local zero spacing
    let half_width = 0.25 * PI / estimate.abs().sqrt();
    let mut lo = estimate - half_width;
    let mut hi = estimate + half_width;
    let mut f_lo = airy_ai(lo);
    let f_hi = airy_ai(hi);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotConverged(format!(
            "no sign change of Ai around the estimate {estimate} for n = {n}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = airy_ai(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
