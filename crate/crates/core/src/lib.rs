//! Counting the resolvable electromagnetic signals in a ball of radius `R`,
//! observed for a time `T` over the band `[F − W, F + W]`.
//!
//! - [`special`]: spherical Bessel functions, Legendre polynomials and the
//!   Gamma-based bounds.
//! - [`bounds`]: closed-form counts and truncation-error bounds.
//! - [`truncation`]: plane waves against their truncated modal series.
//! - [`mutual_info`]: parallel-channel mutual information built on the
//!   per-frequency spatial mode count.
//! - [`sweep`] and [`verify`]: parameter grids and self-checking suites used
//!   by the command-line tool.

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod mutual_info;
pub mod special;
pub mod sweep;
pub mod truncation;
pub mod verify;

pub use bounds::{
    dof_3d_closed_form, dof_3d_discrete_sum, dof_asymptotic, dof_space, dof_time, error_decay_factor,
    truncation_error_bound, truncation_point, AsymptoticCase, CountingMode, DofBreakdown, PhysicalConstants,
    SignalExtent, TruncationOrder,
};
pub use error::{Error, Result};
pub use mutual_info::{mi_lower_bound, modes_at_frequency, mutual_information, total_modes, FrequencyGrid, MiResult};
pub use truncation::{
    decay_experiment, empirical_error, plane_wave_exact, plane_wave_series, ErrorReport, PlaneWaveSpec,
    SpacetimePoint,
};
