//! WebAssembly bindings for the browser demo.
//!
//! The numeric work lives in [`demo`] so it can be tested natively; the
//! exported functions only convert errors into JavaScript exceptions.

use wasm_bindgen::prelude::*;

pub mod demo {
    use stfdof::bounds::{dof_3d_closed_form, PhysicalConstants, SignalExtent};
    use stfdof::mutual_info::{linearized_information, mi_lower_bound, mutual_information, FrequencyGrid};
    use stfdof::truncation::{decay_envelope, decay_experiment, PlaneWaveSpec, SpacetimePoint};
    use stfdof::{Error, Result};

    // Wavenumber used to place a sample at the requested series arguments.
    const K: f64 = 1.0;

    /// Bin cap for the mutual-information grid.
    pub const DEMO_BINS: usize = 1000;

    fn steps(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (1..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
    }

    /// `log10` of the closed-form count on an `nr × nw` grid, R-major.
    ///
    /// R runs over `(0, r_max]` and W over `(0, w_max]`.
    pub fn dof_grid(center: f64, time: f64, r_max: f64, w_max: f64, nr: usize, nw: usize) -> Result<Vec<f64>> {
        if nr == 0 || nw == 0 || nr * nw > 1 << 20 {
            return Err(Error::InvalidSweep(format!("grid {nr}x{nw} out of range")));
        }
        if w_max > center {
            return Err(Error::InvalidExtent(format!("W up to {w_max} exceeds F = {center}")));
        }
        let consts = PhysicalConstants::default();
        let mut out = Vec::with_capacity(nr * nw);
        for r in steps(0.0, r_max, nr) {
            for w in steps(0.0, w_max, nw) {
                let e = SignalExtent::new(r, time, center, w)?;
                out.push(dof_3d_closed_form(&e, consts)?.total.log10());
            }
        }
        Ok(out)
    }

    /// Errors of the truncated plane-wave series at `threshold + s`,
    /// `s = 0..=steps`, for given temporal and spatial series arguments.
    ///
    /// Returns `[empirical.., envelope.., product bound..]`, each of length
    /// `steps + 1`; an undefined bound is `NaN`.
    pub fn truncation_decay(spatial_arg: f64, temporal_arg: f64, cos_angle: f64, steps: u32) -> Result<Vec<f64>> {
        if !(spatial_arg >= 0.0 && temporal_arg >= 0.0 && (-1.0..=1.0).contains(&cos_angle)) {
            return Err(Error::Domain("arguments must be non-negative and |cos| <= 1".into()));
        }
        let c = PhysicalConstants::default().c;
        let wave = PlaneWaveSpec::new(K, K, [0.0, 0.0, 1.0], c)?;
        let r = spatial_arg / wave.k_mag();
        let sin = (1.0 - cos_angle * cos_angle).sqrt();
        let pt = SpacetimePoint::new([r * sin, 0.0, r * cos_angle], temporal_arg / (c * K));
        let reports = decay_experiment(&wave, &pt, steps)?;
        let mut out: Vec<f64> = reports.iter().map(|r| r.empirical).collect();
        out.extend((0..=steps).map(decay_envelope));
        out.extend(reports.iter().map(|r| r.analytic_bound.unwrap_or(f64::NAN)));
        Ok(out)
    }

    /// Mutual information against log-spaced `ρ` in `[rho_min, rho_max]`.
    ///
    /// Bins are spaced `1/T`, widened so the grid never exceeds
    /// [`DEMO_BINS`]. Returns `n` rows of `[ρ, I, lower bound, linearized I]`,
    /// flattened.
    pub fn mutual_information_curve(
        radius: f64,
        time: f64,
        center: f64,
        half_band: f64,
        rho_min: f64,
        rho_max: f64,
        n: usize,
    ) -> Result<Vec<f64>> {
        if !(rho_min > 0.0 && rho_max >= rho_min) || n < 2 {
            return Err(Error::Domain("need 0 < rho_min <= rho_max and n >= 2".into()));
        }
        let consts = PhysicalConstants::default();
        let extent = SignalExtent::new(radius, time, center, half_band)?;
        let spacing = (1.0 / time).max(2.0 * half_band / (DEMO_BINS - 1) as f64);
        let grid = FrequencyGrid::new(center, half_band, spacing)?;
        let (lo, hi) = (rho_min.ln(), rho_max.ln());
        let mut out = Vec::with_capacity(4 * n);
        for i in 0..n {
            let rho = (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp();
            let mi = mutual_information(&grid, radius, consts.c, rho)?;
            out.extend([
                rho,
                mi.mutual_information,
                mi_lower_bound(&extent, consts, rho)?,
                linearized_information(&mi),
            ]);
        }
        Ok(out)
    }
}

fn js_err(e: stfdof::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn dof_grid(center: f64, time: f64, r_max: f64, w_max: f64, nr: usize, nw: usize) -> Result<Vec<f64>, JsError> {
    demo::dof_grid(center, time, r_max, w_max, nr, nw).map_err(js_err)
}

#[wasm_bindgen]
pub fn truncation_decay(spatial_arg: f64, temporal_arg: f64, cos_angle: f64, steps: u32) -> Result<Vec<f64>, JsError> {
    demo::truncation_decay(spatial_arg, temporal_arg, cos_angle, steps).map_err(js_err)
}

#[wasm_bindgen]
pub fn mutual_information_curve(
    radius: f64,
    time: f64,
    center: f64,
    half_band: f64,
    rho_min: f64,
    rho_max: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    demo::mutual_information_curve(radius, time, center, half_band, rho_min, rho_max, n).map_err(js_err)
}
