//! Special functions used by the truncation bounds and the plane-wave
//! series: spherical Bessel functions of the first kind, Legendre
//! polynomials, the addition-theorem kernel and Gamma-based magnitude bounds.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest order accepted by [`spherical_bessel_j`].
pub const MAX_BESSEL_ORDER: u32 = 10_000;

/// Largest argument accepted by [`spherical_bessel_j`].
pub const MAX_BESSEL_ARGUMENT: f64 = 1.0e5;

const RESCALE_ABOVE: f64 = 1.0e200;
const RESCALE_BY: f64 = 1.0e-200;

/// Spherical Bessel function of the first kind, `j_n(x)`, for `x >= 0`.
///
/// Orders below the argument use upward recurrence from the closed forms of
/// `j_0` and `j_1`. Orders at or above the argument use Miller's downward
/// recurrence, normalised against `j_0` and `j_1`.
///
/// Values that lie below the smallest normal `f64` come back as zero or
/// subnormal.
pub fn spherical_bessel_j(n: u32, x: f64) -> Result<f64> {
    if n > MAX_BESSEL_ORDER {
        return Err(Error::Range(format!(
            "order {n} exceeds {MAX_BESSEL_ORDER}"
        )));
    }
    if !x.is_finite() || !(0.0..=MAX_BESSEL_ARGUMENT).contains(&x) {
        return Err(Error::Range(format!(
            "argument {x} outside [0, {MAX_BESSEL_ARGUMENT}]"
        )));
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    Ok(match n {
        0 => j0(x),
        1 => j1(x),
        _ if x < 1.0e-3 => leading_terms(n, x),
        _ if f64::from(n) < x => upward(n, x),
        _ => miller(n, x),
    })
}

fn j0(x: f64) -> f64 {
    if x < 1.0e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

fn j1(x: f64) -> f64 {
    if x < 0.5 {
        // x/3 * (1 - x^2/10 + x^4/280 - x^6/15120 + x^8/1330560 - x^10/172972800)
        let x2 = x * x;
        let poly = 1.0
            - x2 / 10.0
                * (1.0
                    - x2 / 28.0
                        * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0 * (1.0 - x2 / 130.0))));
        x / 3.0 * poly
    } else {
        (x.sin() / x - x.cos()) / x
    }
}

// x^n/(2n+1)!! * (1 - x^2/(2(2n+3)) + x^4/(8(2n+3)(2n+5))), in log space so
// that tiny arguments do not overflow the recurrence.
fn leading_terms(n: u32, x: f64) -> f64 {
    let ln_double_factorial: f64 = (1..=n).map(|k| f64::from(2 * k + 1).ln()).sum();
    let a = f64::from(2 * n + 3);
    let x2 = x * x;
    let correction = 1.0 - x2 / (2.0 * a) + x2 * x2 / (8.0 * a * (a + 2.0));
    (f64::from(n) * x.ln() - ln_double_factorial).exp() * correction
}

fn upward(n: u32, x: f64) -> f64 {
    let mut prev = j0(x);
    let mut cur = j1(x);
    for k in 1..n {
        let next = f64::from(2 * k + 1) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn miller(n: u32, x: f64) -> f64 {
    let top = f64::from(n).max(x.ceil());
    let start = (top + 20.0 + (60.0 * top).sqrt()) as u32;

    let mut above = 0.0_f64;
    let mut cur = 1.0e-30_f64;
    let mut at_n = 0.0_f64;
    let mut f1 = 0.0_f64;
    // cur holds the unnormalised value at order k
    for k in (1..=start).rev() {
        let below = f64::from(2 * k + 1) / x * cur - above;
        above = cur;
        cur = below;
        if k - 1 == n {
            at_n = cur;
        }
        if k - 1 == 1 {
            f1 = cur;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            at_n *= RESCALE_BY;
            f1 *= RESCALE_BY;
        }
    }
    let f0 = cur;
    let (t0, t1) = (j0(x), j1(x));
    // least-squares fit of (f0, f1) to (j0, j1), with magnitudes brought to O(1)
    let m = f0.abs().max(f1.abs());
    let (g0, g1) = (f0 / m, f1 / m);
    (at_n / m) * ((t0 * g0 + t1 * g1) / (g0 * g0 + g1 * g1))
}

/// `ln Γ(n + 1/2)`, exact up to summation rounding:
/// `Γ(n + 1/2) = √π · Π_{k=1..n} (k − 1/2)`.
pub fn ln_gamma_half_integer(n: u32) -> f64 {
    0.5 * PI.ln() + (1..=n).map(|k| (f64::from(k) - 0.5).ln()).sum::<f64>()
}

/// `ln(Γ(n + 3/2) / Γ(3/2)) = Σ_{k=1..n} ln(k + 1/2)`.
fn ln_gamma_ratio_three_halves(n: u32) -> f64 {
    (1..=n).map(|k| (f64::from(k) + 0.5).ln()).sum()
}

/// Magnitude bound `|j_n(x)| <= (√π/2) (x/2)^n / Γ(n + 3/2)`, evaluated in
/// log space. Since `Γ(3/2) = √π/2` this is `(x/2)^n / (Γ(n+3/2)/Γ(3/2))`,
/// which is exactly 1 at `n = 0`.
pub fn spherical_bessel_bound(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if x <= 0.0 {
        return 0.0;
    }
    (f64::from(n) * (x / 2.0).ln() - ln_gamma_ratio_three_halves(n)).exp()
}

/// Stirling-type lower bound `Γ(n + 1/2) > e^{−n−1/2} (n + 1/2)^n √(2π)`.
pub fn gamma_lower_bound(n: u32) -> f64 {
    let m = f64::from(n) + 0.5;
    (-m + f64::from(n) * m.ln() + 0.5 * (2.0 * PI).ln()).exp()
}

/// Legendre polynomial `P_n(u)` by the three-term recurrence.
pub fn legendre_p(n: u32, u: f64) -> Result<f64> {
    if !(u.abs() <= 1.0) {
        return Err(Error::Domain(format!("Legendre argument {u} outside [-1, 1]")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = u;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * u * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The summed harmonic product `Σ_m Y_n^m(r̂) conj(Y_n^m(k̂))` written through
/// the addition theorem as `(2n+1)/(4π) P_n(cos γ)`, where `γ` is the angle
/// between the two directions.
pub fn harmonic_addition_kernel(n: u32, cos_gamma: f64) -> Result<f64> {
    Ok(f64::from(2 * n + 1) / (4.0 * PI) * legendre_p(n, cos_gamma)?)
}
