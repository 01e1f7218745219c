//! Plane waves against their truncated modal series.
//!
//! A plane wave `exp(−j|k|ct − j k·r)` is split as
//! `exp(−j k_min ct) · exp(−j k′ct) · exp(−j k·r)`; the last two factors are
//! expanded in spherical Bessel functions and truncated at `(P, N)`:
//!
//! ```text
//! exp(−j z)        ≈ Σ_{p≤P} (−j)^p (2p+1) j_p(z)
//! exp(−j k·r)      ≈ 4π Σ_{n≤N} (−j)^n j_n(k|r|) K_n(k̂·r̂)
//! ```
//!
//! with `K_n` the addition-theorem kernel. The `(−j)^n` coefficients are the
//! ones whose partial sums converge to the decaying phase `exp(−j …)`.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{truncation_error_bound, truncation_point, TruncationOrder};
use crate::error::{Error, Result};
use crate::special::{harmonic_addition_kernel, spherical_bessel_j};

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// A single plane wave. The wavenumber is stored split into the band-edge
/// part `k_min` and the in-band offset `k_acute`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveSpec {
    pub k_min: f64,
    pub k_acute: f64,
    pub direction: Vec3,
    /// Speed of light, m/s.
    pub c: f64,
}

impl PlaneWaveSpec {
    pub fn new(k_min: f64, k_acute: f64, direction: Vec3, c: f64) -> Result<Self> {
        let wave = Self {
            k_min,
            k_acute,
            direction,
            c,
        };
        wave.validate()?;
        Ok(wave)
    }

    /// Wave at frequency `f` inside the band `[center − half_band, center + half_band]`.
    pub fn in_band(f: f64, center: f64, half_band: f64, direction: Vec3, c: f64) -> Result<Self> {
        let lowest = center - half_band;
        if !(lowest..=center + half_band).contains(&f) {
            return Err(Error::Domain(format!(
                "frequency {f} outside band [{lowest}, {}]",
                center + half_band
            )));
        }
        let to_k = 2.0 * PI / c;
        Self::new(lowest * to_k, (f - lowest) * to_k, direction, c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::Domain(format!("speed of light must be positive, got {}", self.c)));
        }
        if !(self.k_min.is_finite() && self.k_min >= 0.0 && self.k_acute.is_finite() && self.k_acute >= 0.0) {
            return Err(Error::Domain(format!(
                "wavenumbers must be finite and non-negative, got k_min={} k'={}",
                self.k_min, self.k_acute
            )));
        }
        if (norm(self.direction) - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("direction {:?} is not a unit vector", self.direction)));
        }
        Ok(())
    }

    /// Scalar wavenumber `|k| = k_min + k′`.
    pub fn k_mag(&self) -> f64 {
        self.k_min + self.k_acute
    }

    pub fn frequency(&self) -> f64 {
        self.k_mag() * self.c / (2.0 * PI)
    }

    /// In-band frequency offset `f́ = c k′ / 2π`.
    pub fn frequency_offset(&self) -> f64 {
        self.k_acute * self.c / (2.0 * PI)
    }

    /// Whether `k′` fits inside a band of half width `half_band`.
    pub fn fits_band(&self, half_band: f64) -> bool {
        self.k_acute <= 4.0 * PI * half_band / self.c * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub position: Vec3,
    pub time: f64,
}

impl SpacetimePoint {
    pub fn new(position: Vec3, time: f64) -> Self {
        Self { position, time }
    }

    pub fn radius(&self) -> f64 {
        norm(self.position)
    }
}

/// Empirical truncation error at one order, with the analytic bound when the
/// bound is defined there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub order: TruncationOrder,
    pub empirical: f64,
    /// `None` when the order is below the bound's convergence region.
    pub analytic_bound: Option<f64>,
}

impl ErrorReport {
    /// `Some(true)` when the empirical error is within the analytic bound.
    pub fn within_bound(&self) -> Option<bool> {
        self.analytic_bound.map(|b| self.empirical <= b)
    }
}

/// `exp(−j|k|ct − j k·r)`, with `|k|ct` accumulated as `k_min ct + k′ct`.
pub fn plane_wave_exact(wave: &PlaneWaveSpec, pt: &SpacetimePoint) -> Complex64 {
    let ct = wave.c * pt.time;
    let k_dot_r = wave.k_mag() * dot(wave.direction, pt.position);
    carrier(wave, pt) * Complex64::from_polar(1.0, -(wave.k_acute * ct + k_dot_r))
}

fn carrier(wave: &PlaneWaveSpec, pt: &SpacetimePoint) -> Complex64 {
    Complex64::from_polar(1.0, -wave.k_min * wave.c * pt.time)
}

// (−j)^n
fn minus_j_power(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Partial sum `Σ_{p≤order} (−j)^p (2p+1) j_p(z)` of `exp(−j z)`.
pub fn temporal_partial_sum(z: f64, order: u32) -> Result<Complex64> {
    (0..=order).try_fold(Complex64::new(0.0, 0.0), |acc, p| {
        Ok(acc + minus_j_power(p) * (f64::from(2 * p + 1) * spherical_bessel_j(p, z)?))
    })
}

/// Partial sum `4π Σ_{n≤order} (−j)^n j_n(z) K_n(cos γ)` of `exp(−j z cos γ)`.
pub fn spatial_partial_sum(z: f64, cos_gamma: f64, order: u32) -> Result<Complex64> {
    let cos_gamma = cos_gamma.clamp(-1.0, 1.0);
    (0..=order).try_fold(Complex64::new(0.0, 0.0), |acc, n| {
        let term = 4.0 * PI * spherical_bessel_j(n, z)? * harmonic_addition_kernel(n, cos_gamma)?;
        Ok(acc + minus_j_power(n) * term)
    })
}

/// Dimensionless arguments of the two expansions: `(c k′ t, |k||r|, k̂·r̂)`.
pub fn series_arguments(wave: &PlaneWaveSpec, pt: &SpacetimePoint) -> (f64, f64, f64) {
    let r = pt.radius();
    let cos_gamma = if r > 0.0 {
        dot(wave.direction, pt.position) / r
    } else {
        1.0
    };
    (wave.c * wave.k_acute * pt.time, wave.k_mag() * r, cos_gamma)
}

/// Truncated modal series of the plane wave at `pt`.
pub fn plane_wave_series(wave: &PlaneWaveSpec, pt: &SpacetimePoint, order: TruncationOrder) -> Result<Complex64> {
    let (temporal, spatial, cos_gamma) = series_arguments(wave, pt);
    Ok(carrier(wave, pt)
        * temporal_partial_sum(temporal, order.p)?
        * spatial_partial_sum(spatial, cos_gamma, order.n)?)
}

/// Truncation thresholds evaluated at the sample's own `|r|`, `t`, `f` and
/// in-band offset `f́`.
pub fn sample_threshold(wave: &PlaneWaveSpec, pt: &SpacetimePoint) -> TruncationOrder {
    truncation_point(pt.radius(), pt.time, wave.frequency(), wave.frequency_offset(), wave.c)
}

pub fn empirical_error(wave: &PlaneWaveSpec, pt: &SpacetimePoint, order: TruncationOrder) -> Result<ErrorReport> {
    let exact = plane_wave_exact(wave, pt);
    let series = plane_wave_series(wave, pt, order)?;
    let analytic_bound = match truncation_error_bound(
        order,
        wave.frequency_offset(),
        pt.time,
        wave.frequency(),
        pt.radius(),
        wave.c,
    ) {
        Ok(b) => Some(b),
        Err(Error::Divergence(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ErrorReport {
        order,
        empirical: (exact - series).norm(),
        analytic_bound,
    })
}

/// Envelope `(2/e) e^{2−2s}` for the error `s` steps past the threshold
/// (raising both orders by `s`); `2/e` at the threshold itself.
pub fn decay_envelope(steps_past_threshold: u32) -> f64 {
    let base = 2.0 / E;
    if steps_past_threshold == 0 {
        base
    } else {
        base * (2.0 - 2.0 * f64::from(steps_past_threshold)).exp()
    }
}

/// Errors at `threshold + s` for `s = 0..=steps`.
pub fn decay_experiment(wave: &PlaneWaveSpec, pt: &SpacetimePoint, steps: u32) -> Result<Vec<ErrorReport>> {
    if steps < 1 {
        return Err(Error::Domain("decay experiment needs at least one step".into()));
    }
    let threshold = sample_threshold(wave, pt);
    (0..=steps)
        .map(|s| empirical_error(wave, pt, threshold.raised(s)))
        .collect()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const C: f64 = 3.0e8;

    fn wave_z(k_min: f64, k_acute: f64) -> PlaneWaveSpec {
        PlaneWaveSpec::new(k_min, k_acute, [0.0, 0.0, 1.0], C).unwrap()
    }

    #[test]
    fn exact_zero_phase() {
        let w = wave_z(3.0, 0.5);
        let v = plane_wave_exact(&w, &SpacetimePoint::new([1.0, 0.0, 0.0], 0.0));
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn exact_along_axis() {
        let w = wave_z(3.0, 0.5);
        let z = 0.7;
        let v = plane_wave_exact(&w, &SpacetimePoint::new([0.0, 0.0, z], 0.0));
        let expected = Complex64::from_polar(1.0, -3.5 * z);
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn origin_series_is_carrier() {
        let w = wave_z(40.0, 0.0);
        let pt = SpacetimePoint::new([0.0; 3], 2e-9);
        let expected = Complex64::from_polar(1.0, -40.0 * C * 2e-9);
        for order in [TruncationOrder::new(0, 0), TruncationOrder::new(5, 9)] {
            let s = plane_wave_series(&w, &pt, order).unwrap();
            assert!((s - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn series_converges_to_exact() {
        let dir = [0.6, 0.0, 0.8];
        let w = PlaneWaveSpec::new(50.0, 2.0e-5, dir, C).unwrap();
        let pt = SpacetimePoint::new([0.05, -0.1, 0.02], 1.0e-3);
        let order = sample_threshold(&w, &pt).raised(30);
        let err = (plane_wave_exact(&w, &pt) - plane_wave_series(&w, &pt, order).unwrap()).norm();
        assert!(err < 1e-8, "err = {err}");
    }

    #[test]
    fn opposite_sign_convention_does_not_converge() {
        // j^n coefficients sum to exp(+jz), not exp(-jz)
        let z = 3.0;
        let plus: Complex64 = (0..=40_u32)
            .map(|p| Complex64::i().powu(p) * (f64::from(2 * p + 1) * spherical_bessel_j(p, z).unwrap()))
            .sum();
        assert!((plus - Complex64::from_polar(1.0, z)).norm() < 1e-12);
        assert!((plus - Complex64::from_polar(1.0, -z)).norm() > 0.1);
        let minus = temporal_partial_sum(z, 40).unwrap();
        assert!((minus - Complex64::from_polar(1.0, -z)).norm() < 1e-12);
    }

    #[test]
    fn origin_at_time_zero_has_no_error() {
        let w = wave_z(50.0, 1e-5);
        let pt = SpacetimePoint::new([0.0; 3], 0.0);
        for order in [TruncationOrder::new(0, 0), TruncationOrder::new(3, 1)] {
            assert_eq!(empirical_error(&w, &pt, order).unwrap().empirical, 0.0);
        }
    }

    #[test]
    fn threshold_error_below_base_constant() {
        let w = PlaneWaveSpec::new(50.0, 3.0e-5, [0.0, 0.6, 0.8], C).unwrap();
        let pt = SpacetimePoint::new([0.1, 0.05, -0.03], 5e-4);
        let report = empirical_error(&w, &pt, sample_threshold(&w, &pt)).unwrap();
        assert!(report.empirical <= 2.0 / E);
        assert_eq!(report.within_bound(), Some(true));
    }

    #[test]
    fn bound_missing_below_threshold() {
        let w = wave_z(50.0, 0.0);
        let pt = SpacetimePoint::new([0.0, 0.0, 0.2], 0.0);
        let report = empirical_error(&w, &pt, TruncationOrder::new(0, 2)).unwrap();
        assert_eq!(report.analytic_bound, None);
        assert!(report.empirical > 0.0);
    }

    #[test]
    fn envelope_values() {
        assert_relative_eq!(decay_envelope(1), 2.0 / E, max_relative = 1e-15);
        assert_relative_eq!(decay_envelope(5), 2.468_196_081_733_591_4e-4, max_relative = 1e-12);
    }

    #[test]
    fn decay_experiment_shape() {
        let w = wave_z(50.0, 1e-5);
        let pt = SpacetimePoint::new([0.0, 0.03, 0.04], 1e-4);
        let reports = decay_experiment(&w, &pt, 4).unwrap();
        assert_eq!(reports.len(), 5);
        let base = sample_threshold(&w, &pt);
        for (s, r) in reports.iter().enumerate() {
            assert_eq!(r.order, base.raised(s as u32));
        }
        assert!(decay_experiment(&w, &pt, 0).is_err());
    }

    #[test]
    fn in_band_construction() {
        let w = PlaneWaveSpec::in_band(2.4e9 + 500.0, 2.4e9, 1e3, [1.0, 0.0, 0.0], C).unwrap();
        assert_relative_eq!(w.frequency(), 2.4e9 + 500.0, max_relative = 1e-14);
        assert_relative_eq!(w.frequency_offset(), 1500.0, max_relative = 1e-6);
        assert!(w.fits_band(1e3));
        assert!(PlaneWaveSpec::in_band(2.4e9 + 2e3, 2.4e9, 1e3, [1.0, 0.0, 0.0], C).is_err());
        assert!(PlaneWaveSpec::new(1.0, 0.0, [1.0, 1.0, 0.0], C).is_err());
    }
}
