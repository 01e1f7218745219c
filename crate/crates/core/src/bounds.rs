//! Closed-form dimensionality counts and truncation-error bounds.
//!
//! A signal observed inside a ball of radius `R`, over `[0, T]`, in the band
//! `[F − W, F + W]` is described by a [`SignalExtent`]. The main entry point is
//! [`dof_3d_closed_form`]; [`dof_3d_discrete_sum`] counts the same modes one
//! spatial order at a time and serves as its brute-force check.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `eπ`, the slope shared by every threshold below.
pub const E_PI: f64 = E * PI;

/// Speed of light used by default, m/s.
pub const DEFAULT_SPEED_OF_LIGHT: f64 = 3.0e8;

/// Physical size of an observation: radius (m), duration (s), centre
/// frequency (Hz) and half bandwidth (Hz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalExtent {
    pub radius: f64,
    pub time: f64,
    pub center: f64,
    pub half_band: f64,
}

impl SignalExtent {
    pub fn new(radius: f64, time: f64, center: f64, half_band: f64) -> Result<Self> {
        let extent = Self {
            radius,
            time,
            center,
            half_band,
        };
        extent.validate()?;
        Ok(extent)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("radius R", self.radius),
            ("time T", self.time),
            ("center frequency F", self.center),
            ("half bandwidth W", self.half_band),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidExtent(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if self.center < self.half_band {
            return Err(Error::InvalidExtent(format!(
                "center frequency F ({}) must be at least the half bandwidth W ({})",
                self.center, self.half_band
            )));
        }
        Ok(())
    }

    pub fn lowest_frequency(&self) -> f64 {
        self.center - self.half_band
    }

    pub fn highest_frequency(&self) -> f64 {
        self.center + self.half_band
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
}

impl PhysicalConstants {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain(format!("speed of light must be positive, got {c}")));
        }
        Ok(Self { c })
    }

    /// `eπR/c`: spatial order per hertz for a ball of radius `radius`.
    fn spatial_slope(&self, radius: f64) -> f64 {
        E_PI * radius / self.c
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            c: DEFAULT_SPEED_OF_LIGHT,
        }
    }
}

/// Truncation indices of the modal series: `p` over time-frequency, `n`
/// over space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationOrder {
    pub p: u32,
    pub n: u32,
}

impl TruncationOrder {
    pub fn new(p: u32, n: u32) -> Self {
        Self { p, n }
    }

    /// Both indices raised by `step`.
    pub fn raised(self, step: u32) -> Self {
        Self {
            p: self.p + step,
            n: self.n + step,
        }
    }

    /// Combined threshold `p + n`.
    pub fn total(self) -> u32 {
        self.p + self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DofBreakdown {
    /// Spatial order reached at the bottom of the band, `eπR(F−W)/c`.
    pub n0: f64,
    /// Spatial order reached at the top of the band, `eπR(F+W)/c`.
    pub n1: f64,
    /// Modes whose spatial order is active across the whole band.
    pub d1: f64,
    /// Modes switched on part-way through the band.
    pub d2: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingMode {
    #[default]
    Continuous,
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticCase {
    RToZero,
    TwToZero,
    TToZeroWFixed,
    FullBand,
    General,
}

/// Time-bandwidth count `2WT + 1`.
pub fn dof_time(half_band: f64, time: f64) -> f64 {
    2.0 * half_band * time + 1.0
}

/// Narrowband spatial count `(eπRF/c + 1)^2`; [`CountingMode::Integer`]
/// rounds the spatial order up first.
pub fn dof_space(radius: f64, center: f64, consts: PhysicalConstants, mode: CountingMode) -> f64 {
    let order = consts.spatial_slope(radius) * center;
    let order = match mode {
        CountingMode::Continuous => order,
        CountingMode::Integer => order.ceil(),
    };
    (order + 1.0).powi(2)
}

/// Truncation thresholds at a point: `p = ⌈eπ Δf t⌉`, `n = ⌈eπ f |r| / c⌉`.
pub fn truncation_point(r_norm: f64, t: f64, f: f64, delta_f: f64, c: f64) -> TruncationOrder {
    TruncationOrder {
        p: ceil_order(E_PI * delta_f * t),
        n: ceil_order(E_PI * f * r_norm / c),
    }
}

fn ceil_order(v: f64) -> u32 {
    debug_assert!(v >= 0.0);
    v.ceil() as u32
}

/// Product bound on the error of the series truncated at `order`:
///
/// `2e (eπ f́ t / (P+1))^P (eπ f |r| / c / (N+1))^N`.
///
/// Valid only while `P + 1 > eπ f́ t` and `N + 1 > eπ f |r| / c`; outside that
/// region the geometric tails diverge and a [`Error::Divergence`] is returned.
pub fn truncation_error_bound(
    order: TruncationOrder,
    f_acute: f64,
    t: f64,
    f: f64,
    r_norm: f64,
    c: f64,
) -> Result<f64> {
    let temporal = E_PI * f_acute * t;
    let spatial = E_PI * f * r_norm / c;
    let (p1, n1) = (f64::from(order.p) + 1.0, f64::from(order.n) + 1.0);
    if !(p1 > temporal) || !(n1 > spatial) {
        return Err(Error::Divergence(format!(
            "need P+1 > {temporal} and N+1 > {spatial}, got P={} N={}",
            order.p, order.n
        )));
    }
    let ln_bound = (2.0 * E).ln()
        + ln_power_term(order.p, temporal / p1)
        + ln_power_term(order.n, spatial / n1);
    Ok(ln_bound.exp())
}

// ln(ratio^k) with 0^0 = 1
fn ln_power_term(k: u32, ratio: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        f64::from(k) * ratio.ln()
    }
}

/// Relative shrink factor `e^{2−δ−α}` when the time and space orders are
/// raised by `delta` and `alpha`.
pub fn error_decay_factor(delta: u32, alpha: u32) -> Result<f64> {
    if delta < 1 || alpha < 1 {
        return Err(Error::Domain(format!(
            "decay increments must be at least 1, got delta={delta} alpha={alpha}"
        )));
    }
    Ok((2.0 - f64::from(delta) - f64::from(alpha)).exp())
}

/// Closed-form three-dimensional count with its `D1`/`D2` split.
///
/// With `a = eπR/c` and `τ = 2eπWT`:
///
/// ```text
/// D1 = (τ + 1)(a(F−W) + 1)^2
/// D2 = τ a^2 (2FW − 2W^2/3) + 4 a^2 F W + τ (aF + 1/6)
/// ```
pub fn dof_3d_closed_form(extent: &SignalExtent, consts: PhysicalConstants) -> Result<DofBreakdown> {
    extent.validate()?;
    let SignalExtent {
        time: t,
        center: f,
        half_band: w,
        ..
    } = *extent;
    let a = consts.spatial_slope(extent.radius);
    let tau = 2.0 * E_PI * w * t;
    let n0 = a * (f - w);
    let n1 = a * (f + w);
    let d1 = (tau + 1.0) * (n0 + 1.0).powi(2);
    let d2 = tau * a * a * (2.0 * f * w - 2.0 / 3.0 * w * w)
        + a * a * 4.0 * f * w
        + tau * (a * f + 1.0 / 6.0);
    Ok(DofBreakdown {
        n0,
        n1,
        d1,
        d2,
        total: d1 + d2,
    })
}

/// Mode count summed over integer spatial orders `n = 0..=⌊N1⌋`.
///
/// Orders below `N0` carry the full `2eπWT + 1` time-frequency modes; orders
/// in `[N0, N1]` only see the part of the band above `n c / (eπR)`, giving
/// `eπ(F + W − n c/(eπR))⁺ T + 1`. Each order contributes `2n + 1` spatial
/// modes.
pub fn dof_3d_discrete_sum(extent: &SignalExtent, consts: PhysicalConstants) -> Result<f64> {
    extent.validate()?;
    let full = 2.0 * E_PI * extent.half_band * extent.time + 1.0;
    let a = consts.spatial_slope(extent.radius);
    if a == 0.0 {
        return Ok(full);
    }
    let n0 = a * extent.lowest_frequency();
    let n1 = a * extent.highest_frequency();
    let top = n1.floor() as u64;
    let mut sum = 0.0;
    for n in 0..=top {
        let nf = n as f64;
        let per_order = if nf < n0 {
            full
        } else {
            E_PI * (extent.highest_frequency() - nf / a).max(0.0) * extent.time + 1.0
        };
        sum += per_order * (2.0 * nf + 1.0);
    }
    Ok(sum)
}

/// Limiting forms of the closed-form count.
///
/// `TToZeroWFixed` returns the narrowband count with `F → F + W`, which is not
/// the exact `T → 0` limit of [`dof_3d_closed_form`]: the two differ by
/// `4 (eπR/c) W`.
pub fn dof_asymptotic(extent: &SignalExtent, consts: PhysicalConstants, case: AsymptoticCase) -> Result<f64> {
    extent.validate()?;
    let SignalExtent {
        radius: r,
        time: t,
        center: f,
        half_band: w,
    } = *extent;
    let a = consts.spatial_slope(r);
    let broadband = 2.0 * E_PI * t * w * a * a;
    Ok(match case {
        AsymptoticCase::RToZero => 7.0 * E_PI * t * w / 3.0 + 1.0,
        AsymptoticCase::TwToZero => (a * f + 1.0).powi(2),
        AsymptoticCase::TToZeroWFixed => (a * (f + w) + 1.0).powi(2),
        AsymptoticCase::FullBand => broadband * 4.0 / 3.0 * w * w,
        AsymptoticCase::General => broadband * (f * f + w * w / 3.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn time_bandwidth_examples() {
        assert_eq!(dof_time(0.0, 123.0), 1.0);
        assert_eq!(dof_time(1000.0, 0.0005), 2.0);
        assert_eq!(dof_time(1e3, 1.0), 2001.0);
    }

    #[test]
    fn space_examples() {
        let c = consts();
        assert_eq!(dof_space(0.0, 2.4e9, c, CountingMode::Integer), 1.0);
        assert_eq!(dof_space(0.0, 2.4e9, c, CountingMode::Continuous), 1.0);
        // pick R so that eπRF/c = 2.5 exactly in units where c/F = eπ
        let consts = PhysicalConstants::new(E_PI).unwrap();
        assert_relative_eq!(dof_space(2.5, 1.0, consts, CountingMode::Integer), 16.0);
        assert_relative_eq!(dof_space(2.5, 1.0, consts, CountingMode::Continuous), 12.25, max_relative = 1e-14);
    }

    #[test]
    fn truncation_point_examples() {
        assert_eq!(truncation_point(0.0, 0.0, 2.4e9, 2e3, 3e8), TruncationOrder::new(0, 0));
        assert_eq!(truncation_point(0.0, 1e-3, 0.0, 2000.0, 3e8).p, 18);
        assert_eq!(truncation_point(1.0, 0.0, 2.4e9, 0.0, 3e8).n, 69);
    }

    #[test]
    fn bound_degenerate_order() {
        let b = truncation_error_bound(TruncationOrder::new(0, 0), 100.0, 1e-3, 2.4e9, 0.01, 3e8).unwrap();
        assert_relative_eq!(b, 2.0 * E, max_relative = 1e-15);
        assert_relative_eq!(2.0 * E, 5.436_563_656_918_09, max_relative = 1e-14);
    }

    #[test]
    fn bound_rejects_divergent_order() {
        // eπ·2000·1e-3 ≈ 17.08 needs P >= 17
        let r = truncation_error_bound(TruncationOrder::new(16, 0), 2000.0, 1e-3, 1.0, 0.0, 3e8);
        assert!(matches!(r, Err(Error::Divergence(_))));
        assert!(truncation_error_bound(TruncationOrder::new(17, 0), 2000.0, 1e-3, 1.0, 0.0, 3e8).is_ok());
    }

    #[test]
    fn bound_zero_argument_with_positive_order() {
        let b = truncation_error_bound(TruncationOrder::new(3, 0), 0.0, 1.0, 1.0, 0.0, 3e8).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn bound_shrinks_at_least_by_decay_factor() {
        let (fa, t, f, r, c) = (2000.0, 1e-3, 2.4e9, 0.1, 3e8);
        let base = truncation_point(r, t, f, fa, c);
        let eps = truncation_error_bound(base, fa, t, f, r, c).unwrap();
        for delta in 1..6 {
            for alpha in 1..6 {
                let raised = TruncationOrder::new(base.p + delta, base.n + alpha);
                let shrunk = truncation_error_bound(raised, fa, t, f, r, c).unwrap();
                assert!(shrunk < eps * error_decay_factor(delta, alpha).unwrap());
            }
        }
    }

    #[test]
    fn bound_sequence_is_strictly_decreasing() {
        let (fa, t, f, r, c) = (1500.0, 4e-4, 2.4e9, 0.2, 3e8);
        let base = truncation_point(r, t, f, fa, c);
        let seq: Vec<f64> = (0..=20)
            .map(|s| truncation_error_bound(base.raised(s), fa, t, f, r, c).unwrap())
            .collect();
        assert!(seq.windows(2).all(|w| w[1] < w[0]));
        assert!(seq[20] / seq[0] <= (2.0 - 40.0_f64).exp());
    }

    #[test]
    fn decay_factor_examples() {
        assert_eq!(error_decay_factor(1, 1).unwrap(), 1.0);
        assert_relative_eq!(error_decay_factor(2, 2).unwrap(), 0.135_335_283_236_612_7, max_relative = 1e-14);
        assert_relative_eq!(error_decay_factor(5, 5).unwrap(), 3.354_626_279_025_119e-4, max_relative = 1e-14);
        assert!(error_decay_factor(0, 3).is_err());
        assert!(error_decay_factor(3, 0).is_err());
    }

    #[test]
    fn extent_validation() {
        assert!(SignalExtent::new(0.1, 1e-3, 1e9, 2e9).is_err());
        assert!(SignalExtent::new(-0.1, 1e-3, 1e9, 1e3).is_err());
        assert!(SignalExtent::new(0.1, f64::NAN, 1e9, 1e3).is_err());
        assert!(SignalExtent::new(0.1, 1e-3, 1e3, 1e3).is_ok());
        assert!(PhysicalConstants::new(0.0).is_err());
    }

    #[test]
    fn closed_form_point_region() {
        let ext = SignalExtent::new(0.0, 1e-3, 2.4e9, 1e3).unwrap();
        let d = dof_3d_closed_form(&ext, consts()).unwrap();
        assert_relative_eq!(d.total, 7.0 * E_PI / 3.0 + 1.0, max_relative = 1e-12);
        assert_relative_eq!(d.total, 20.926_046_519_571_65, max_relative = 1e-12);
        assert_eq!(d.n0, 0.0);
    }

    #[test]
    fn closed_form_narrowband() {
        let ext = SignalExtent::new(0.25, 0.0, 2.4e9, 0.0).unwrap();
        let d = dof_3d_closed_form(&ext, consts()).unwrap();
        let a = E_PI * 0.25 / 3e8;
        assert_relative_eq!(d.total, (a * 2.4e9 + 1.0).powi(2), max_relative = 1e-12);
        assert_eq!(d.d2, 0.0);
    }

    #[test]
    fn closed_form_instantaneous_broadband_gap() {
        let ext = SignalExtent::new(3.0, 0.0, 2.4e6, 1.0e6).unwrap();
        let d = dof_3d_closed_form(&ext, consts()).unwrap();
        let claimed = dof_asymptotic(&ext, consts(), AsymptoticCase::TToZeroWFixed).unwrap();
        let a = E_PI * 3.0 / 3e8;
        assert_relative_eq!(claimed - d.total, 4.0 * a * 1.0e6, max_relative = 1e-9);
    }

    #[test]
    fn full_band_ratio_tends_to_one() {
        let mut last = f64::INFINITY;
        for scale in [1.0, 10.0, 100.0, 1000.0] {
            let w = 1.0e6 * scale;
            let ext = SignalExtent::new(10.0 * scale, 1e-3 * scale, w, w).unwrap();
            let exact = dof_3d_closed_form(&ext, consts()).unwrap().total;
            let approx = dof_asymptotic(&ext, consts(), AsymptoticCase::FullBand).unwrap();
            let gap = (exact / approx - 1.0).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn general_asymptotic_matches_leading_terms() {
        let ext = SignalExtent::new(1000.0, 1e-2, 2.0e7, 5.0e6).unwrap();
        let exact = dof_3d_closed_form(&ext, consts()).unwrap().total;
        let approx = dof_asymptotic(&ext, consts(), AsymptoticCase::General).unwrap();
        assert!((exact / approx - 1.0).abs() < 0.05);
    }

    #[test]
    fn discrete_sum_point_region() {
        let ext = SignalExtent::new(0.0, 1e-3, 2.4e9, 1e3).unwrap();
        let d = dof_3d_discrete_sum(&ext, consts()).unwrap();
        assert_relative_eq!(d, 2.0 * E_PI + 1.0, max_relative = 1e-14);
    }

    #[test]
    fn discrete_sum_narrowband_is_odd_number_sum() {
        for r in [0.01, 0.1, 0.25, 0.7, 1.3] {
            let ext = SignalExtent::new(r, 0.0, 2.4e9, 0.0).unwrap();
            let n0 = E_PI * r * 2.4e9 / 3e8;
            let d = dof_3d_discrete_sum(&ext, consts()).unwrap();
            assert_eq!(d, (n0.floor() + 1.0).powi(2));
        }
    }

    #[test]
    fn discrete_sum_full_band_part_closed_form() {
        // integer N0 with W = 0 reduces the sum to the first branch
        let tau: f64 = 2.0 * E_PI * 1e3 * 5e-4;
        for n0 in [3_u32, 10, 25] {
            let sum: f64 = (0..=n0).map(|n| (tau + 1.0) * f64::from(2 * n + 1)).sum();
            assert_relative_eq!(sum, (tau + 1.0) * f64::from(n0 + 1).powi(2), max_relative = 1e-13);
        }
    }

    #[test]
    fn discrete_sum_near_closed_form_at_figure_point() {
        let ext = SignalExtent::new(0.25, 5e-4, 2.4e9, 1e3).unwrap();
        let sum = dof_3d_discrete_sum(&ext, consts()).unwrap();
        let closed = dof_3d_closed_form(&ext, consts()).unwrap().total;
        assert!((sum / closed - 1.0).abs() < 0.10);
    }
}
