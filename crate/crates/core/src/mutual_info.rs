//! Mutual information of a broadband MIMO link split into parallel
//! frequency bins, each carrying `N_t(f) = (eπRf/c + 1)^2` spatial modes.
//!
//! Logarithms are natural, so information is in nats.

use serde::{Deserialize, Serialize};

use crate::bounds::{PhysicalConstants, SignalExtent, E_PI};
use crate::error::{Error, Result};

/// Largest grid [`FrequencyGrid::new`] will allocate.
pub const MAX_BINS: usize = 10_000_000;

/// Ordered bin centres covering `[F − W, F + W]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    center: f64,
    half_band: f64,
    spacing: f64,
    bins: Vec<f64>,
}

impl FrequencyGrid {
    /// Bins at `F − W + i·spacing` for every `i` that stays inside the band.
    /// An infinite spacing gives a single bin at the bottom of the band.
    pub fn new(center: f64, half_band: f64, spacing: f64) -> Result<Self> {
        if !(center.is_finite() && half_band.is_finite() && half_band >= 0.0 && center >= half_band) {
            return Err(Error::Domain(format!(
                "band needs F >= W >= 0, got F={center} W={half_band}"
            )));
        }
        if !(spacing > 0.0) {
            return Err(Error::Domain(format!("bin spacing must be positive, got {spacing}")));
        }
        let lowest = center - half_band;
        // tolerate rounding in 2W/spacing so that 2WT + 1 bins come out for spacing 1/T
        let count = (2.0 * half_band / spacing + 1e-9).floor() + 1.0;
        if !(count <= MAX_BINS as f64) {
            return Err(Error::Range(format!("{count} bins exceeds the limit of {MAX_BINS}")));
        }
        let count = count as usize;
        let bins = (0..count)
            .map(|i| (lowest + i as f64 * spacing).min(center + half_band))
            .collect();
        Ok(Self {
            center,
            half_band,
            spacing,
            bins,
        })
    }

    /// Grid with spacing `1/T`, i.e. `2WT + 1` bins.
    pub fn for_extent(extent: &SignalExtent) -> Result<Self> {
        extent.validate()?;
        Self::new(extent.center, extent.half_band, 1.0 / extent.time)
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_band(&self) -> f64 {
        self.half_band
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiResult {
    pub modes_per_bin: Vec<f64>,
    pub total_modes: f64,
    /// Nats.
    pub mutual_information: f64,
    pub rho: f64,
}

/// Spatial modes at frequency `f`: `(eπRf/c + 1)^2`.
pub fn modes_at_frequency(f: f64, radius: f64, c: f64) -> f64 {
    (E_PI * radius * f / c + 1.0).powi(2)
}

/// Sum with a fixed pairwise reduction tree, independent of thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

fn modes_for(grid: &FrequencyGrid, radius: f64, c: f64) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::Domain("frequency grid has no bins".into()));
    }
    Ok(grid.bins().iter().map(|&f| modes_at_frequency(f, radius, c)).collect())
}

/// `N = Σ_f N_t(f)` over the grid.
pub fn total_modes(grid: &FrequencyGrid, radius: f64, c: f64) -> Result<f64> {
    Ok(pairwise_sum(&modes_for(grid, radius, c)?))
}

/// `I = Σ_f N_t(f) ln(1 + ρ N_t(f) / N)`.
pub fn mutual_information(grid: &FrequencyGrid, radius: f64, c: f64, rho: f64) -> Result<MiResult> {
    mutual_information_from_modes(modes_for(grid, radius, c)?, rho)
}

/// Same sum for an arbitrary per-bin mode profile.
pub fn mutual_information_from_modes(modes_per_bin: Vec<f64>, rho: f64) -> Result<MiResult> {
    if modes_per_bin.is_empty() {
        return Err(Error::Domain("mode profile is empty".into()));
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!("rho must be finite and non-negative, got {rho}")));
    }
    if let Some(bad) = modes_per_bin.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(Error::Domain(format!("mode counts must be positive, got {bad}")));
    }
    let total = pairwise_sum(&modes_per_bin);
    let terms: Vec<f64> = modes_per_bin
        .iter()
        .map(|&nt| nt * (rho * nt / total).ln_1p())
        .collect();
    Ok(MiResult {
        total_modes: total,
        mutual_information: pairwise_sum(&terms),
        modes_per_bin,
        rho,
    })
}

/// `ρ (eπR(F−W)/c + 1)^2`.
pub fn mi_lower_bound(extent: &SignalExtent, consts: PhysicalConstants, rho: f64) -> Result<f64> {
    extent.validate()?;
    Ok(rho * modes_at_frequency(extent.lowest_frequency(), extent.radius, consts.c))
}

/// `Σ N_t ρ N_t / N`, the first-order upper bound on [`mutual_information`].
pub fn linearized_information(result: &MiResult) -> f64 {
    let terms: Vec<f64> = result
        .modes_per_bin
        .iter()
        .map(|&nt| nt * result.rho * nt / result.total_modes)
        .collect();
    pairwise_sum(&terms)
}
