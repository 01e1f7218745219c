//! Self-checking suites over the special functions, the truncation series,
//! the discrete-sum oracle and the mutual-information limits.
//!
//! Each suite returns a [`SuiteReport`] made of named checks. A check counts
//! how many cases it evaluated, how many violated their limit and the worst
//! `value / limit` ratio seen (a ratio above 1 is a violation).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{dof_3d_closed_form, dof_3d_discrete_sum, PhysicalConstants, SignalExtent, TruncationOrder, E_PI};
use crate::error::{Error, Result};
use crate::mutual_info::{
    linearized_information, mi_lower_bound, mutual_information, mutual_information_from_modes, FrequencyGrid,
};
use crate::special::{
    gamma_lower_bound, harmonic_addition_kernel, legendre_p, ln_gamma_half_integer, spherical_bessel_bound,
    spherical_bessel_j,
};
use crate::sweep::{Axis, Parameter, Preset, SweepSpec};
use crate::truncation::{
    decay_envelope, empirical_error, plane_wave_exact, plane_wave_series, sample_threshold, PlaneWaveSpec,
    SpacetimePoint, Vec3,
};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Bessel,
    Truncation,
    SumOracle,
    Mi,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel" => Ok(Suite::Bessel),
            "truncation" => Ok(Suite::Truncation),
            "sum_oracle" => Ok(Suite::SumOracle),
            "mi" => Ok(Suite::Mi),
            other => Err(Error::Domain(format!(
                "unknown suite {other:?}, expected bessel, truncation, sum_oracle or mi"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bessel => "bessel",
            Suite::Truncation => "truncation",
            Suite::SumOracle => "sum_oracle",
            Suite::Mi => "mi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub evaluated: usize,
    pub violations: usize,
    /// Largest `value / limit` seen; 0 when nothing was evaluated.
    pub worst_ratio: f64,
}

impl CheckResult {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            evaluated: 0,
            violations: 0,
            worst_ratio: 0.0,
        }
    }

    /// Records `value <= limit`.
    fn at_most(&mut self, value: f64, limit: f64) {
        self.evaluated += 1;
        let ratio = if limit > 0.0 {
            value / limit
        } else if value <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if !(value <= limit) {
            self.violations += 1;
        }
        if ratio > self.worst_ratio || ratio.is_nan() {
            self.worst_ratio = ratio;
        }
    }

    fn holds(&mut self, ok: bool) {
        self.at_most(if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Bessel => bessel_suite(),
        Suite::Truncation => Ok(truncation_suite(&TruncationSuiteConfig::with_seed(seed))?.report),
        Suite::SumOracle => sum_oracle_suite(),
        Suite::Mi => mi_suite(),
    }
}

// ----------------------------------------------------------------------------
// special functions

pub const BESSEL_GRID_MAX_ORDER: u32 = 50;
pub const RECURRENCE_MAX_ORDER: u32 = 100;
pub const RECURRENCE_TOLERANCE: f64 = 1e-10;

/// `x = 0, 0.1, ..., 50` built from integers so the grid is exact.
fn tenth_grid(from_tenths: u32, to_tenths: u32) -> impl Iterator<Item = f64> {
    (from_tenths..=to_tenths).map(|i| f64::from(i) / 10.0)
}

pub fn bessel_suite() -> Result<SuiteReport> {
    let mut bound = CheckResult::new("bessel magnitude bound, n<=50, x in 0..50 step 0.1");
    let rows: Vec<Vec<(f64, f64)>> = (0..=BESSEL_GRID_MAX_ORDER)
        .into_par_iter()
        .map(|n| {
            tenth_grid(0, 500)
                .map(|x| Ok((spherical_bessel_j(n, x)?.abs(), spherical_bessel_bound(n, x))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (value, limit) in rows.into_iter().flatten() {
        bound.at_most(value, limit);
    }

    let mut recurrence = CheckResult::new("three-term recurrence, n<=100, x in 0.5..50, rel 1e-10");
    let rows: Vec<Vec<(f64, f64)>> = (1..=RECURRENCE_MAX_ORDER)
        .into_par_iter()
        .map(|n| {
            tenth_grid(5, 500)
                .map(|x| {
                    let (lo, mid, hi) = (
                        spherical_bessel_j(n - 1, x)?,
                        spherical_bessel_j(n, x)?,
                        spherical_bessel_j(n + 1, x)?,
                    );
                    let rhs = f64::from(2 * n + 1) / x * mid;
                    let scale = lo.abs().max(hi.abs()).max(rhs.abs());
                    Ok(((lo + hi - rhs).abs(), RECURRENCE_TOLERANCE * scale))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (value, limit) in rows.into_iter().flatten() {
        recurrence.at_most(value, limit);
    }

    let mut gamma = CheckResult::new("gamma lower bound below Gamma(n+1/2), n<=100");
    for n in 0..=100 {
        let ratio = (gamma_lower_bound(n).ln() - ln_gamma_half_integer(n)).exp();
        gamma.holds(ratio > 0.0 && ratio < 1.0);
    }

    let mut legendre = CheckResult::new("|P_n(u)| <= 1 and P_n(1) = 1, n<=100");
    let mut kernel = CheckResult::new("addition kernel within (2n+1)/(2pi), n<=100");
    for n in 0..=100 {
        legendre.at_most((legendre_p(n, 1.0)? - 1.0).abs(), 1e-12);
        for i in 0..=200 {
            let u = -1.0 + f64::from(i) / 100.0;
            legendre.at_most(legendre_p(n, u)?.abs(), 1.0);
            kernel.at_most(harmonic_addition_kernel(n, u)?.abs(), f64::from(2 * n + 1) / (2.0 * PI));
        }
    }

    Ok(SuiteReport {
        suite: Suite::Bessel,
        seed: None,
        checks: vec![bound, recurrence, gamma, legendre, kernel],
    })
}

// ----------------------------------------------------------------------------
// truncation series

pub const TRUNCATION_SAMPLES: usize = 200;
pub const MAX_SERIES_ARGUMENT: f64 = 10.0;
pub const DECAY_STEPS: u32 = 10;
pub const CONVERGENCE_MARGIN: u32 = 30;
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSuiteConfig {
    pub seed: u64,
    pub samples: usize,
    /// Upper limit for both `|k||r|` and `c k′ t`.
    pub max_argument: f64,
    /// Band the waves are drawn from.
    pub extent: SignalExtent,
    pub consts: PhysicalConstants,
}

impl TruncationSuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            samples: TRUNCATION_SAMPLES,
            max_argument: MAX_SERIES_ARGUMENT,
            extent: Preset::Fig1.spec().fixed_with(0.25, 1.0e3),
            consts: PhysicalConstants::default(),
        }
    }
}

impl SweepSpec {
    fn fixed_with(&self, radius: f64, half_band: f64) -> SignalExtent {
        SignalExtent {
            radius,
            half_band,
            ..self.fixed
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSample {
    pub index: usize,
    pub wave: PlaneWaveSpec,
    pub point: SpacetimePoint,
}

fn unit_vector(rng: &mut impl Rng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).max(0.0).sqrt();
    let v = [s * phi.cos(), s * phi.sin(), z];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Random waves in the configured band with `|k||r|` and `c k′ t` uniform on
/// `[0, max_argument)` and independent uniform directions for `k̂` and `r̂`.
pub fn truncation_samples(config: &TruncationSuiteConfig) -> Result<Vec<TruncationSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let c = config.consts.c;
    let ext = config.extent;
    ext.validate()?;
    (0..config.samples)
        .map(|index| {
            let direction = unit_vector(&mut rng);
            let offset: f64 = rng.gen_range(0.0..=2.0 * ext.half_band);
            let k_min = 2.0 * PI * ext.lowest_frequency() / c;
            let k_acute = 2.0 * PI * offset / c;
            let wave = PlaneWaveSpec::new(k_min, k_acute, direction, c)?;
            let spatial: f64 = rng.gen_range(0.0..config.max_argument);
            let temporal: f64 = rng.gen_range(0.0..config.max_argument);
            let r_hat = unit_vector(&mut rng);
            let r = spatial / wave.k_mag();
            let t = if k_acute > 0.0 { temporal / (c * k_acute) } else { 0.0 };
            Ok(TruncationSample {
                index,
                wave,
                point: SpacetimePoint::new([r * r_hat[0], r * r_hat[1], r * r_hat[2]], t),
            })
        })
        .collect()
}

/// One evaluated order of one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationRecord {
    pub seed: u64,
    pub sample: usize,
    pub wave: PlaneWaveSpec,
    pub point: SpacetimePoint,
    pub order: TruncationOrder,
    pub steps_past_threshold: u32,
    pub empirical: f64,
    pub bound: Option<f64>,
    /// `(2/e) e^{2−2s}`; `None` for the convergence order.
    pub envelope: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationOutcome {
    pub report: SuiteReport,
    pub records: Vec<TruncationRecord>,
}

pub const CHECK_BASE_BOUND: &str = "error at threshold <= 2/e";
pub const CHECK_ENVELOPE: &str = "error at threshold+s <= (2/e)e^(2-2s), s=1..10";
pub const CHECK_PRODUCT_BOUND: &str = "error <= product bound, every evaluated order";
pub const CHECK_PRODUCT_BOUND_AT_THRESHOLD: &str = "error <= product bound at threshold";
pub const CHECK_CONVERGENCE: &str = "series at threshold+30 within 1e-8 of exact";

fn sample_records(seed: u64, sample: &TruncationSample) -> Result<Vec<TruncationRecord>> {
    let threshold = sample_threshold(&sample.wave, &sample.point);
    let mut records = Vec::with_capacity(DECAY_STEPS as usize + 2);
    for s in 0..=DECAY_STEPS {
        let r = empirical_error(&sample.wave, &sample.point, threshold.raised(s))?;
        let envelope = decay_envelope(s);
        records.push(TruncationRecord {
            seed,
            sample: sample.index,
            wave: sample.wave,
            point: sample.point,
            order: r.order,
            steps_past_threshold: s,
            empirical: r.empirical,
            bound: r.analytic_bound,
            envelope: Some(envelope),
            pass: r.empirical <= envelope && r.within_bound().unwrap_or(true),
        });
    }
    let order = threshold.raised(CONVERGENCE_MARGIN);
    let exact = plane_wave_exact(&sample.wave, &sample.point);
    let series = plane_wave_series(&sample.wave, &sample.point, order)?;
    let r = empirical_error(&sample.wave, &sample.point, order)?;
    let empirical = (exact - series).norm();
    records.push(TruncationRecord {
        seed,
        sample: sample.index,
        wave: sample.wave,
        point: sample.point,
        order,
        steps_past_threshold: CONVERGENCE_MARGIN,
        empirical,
        bound: r.analytic_bound,
        envelope: None,
        pass: empirical <= CONVERGENCE_TOLERANCE,
    });
    Ok(records)
}

pub fn truncation_suite(config: &TruncationSuiteConfig) -> Result<TruncationOutcome> {
    let samples = truncation_samples(config)?;
    let records: Vec<TruncationRecord> = samples
        .par_iter()
        .map(|s| sample_records(config.seed, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut base = CheckResult::new(CHECK_BASE_BOUND);
    let mut envelope = CheckResult::new(CHECK_ENVELOPE);
    let mut product = CheckResult::new(CHECK_PRODUCT_BOUND);
    let mut product_at_threshold = CheckResult::new(CHECK_PRODUCT_BOUND_AT_THRESHOLD);
    let mut convergence = CheckResult::new(CHECK_CONVERGENCE);
    for r in &records {
        match (r.steps_past_threshold, r.envelope) {
            (_, None) => convergence.at_most(r.empirical, CONVERGENCE_TOLERANCE),
            (0, Some(limit)) => base.at_most(r.empirical, limit),
            (_, Some(limit)) => envelope.at_most(r.empirical, limit),
        }
        if let Some(b) = r.bound {
            product.at_most(r.empirical, b);
            if r.steps_past_threshold == 0 {
                product_at_threshold.at_most(r.empirical, b);
            }
        }
    }
    Ok(TruncationOutcome {
        report: SuiteReport {
            suite: Suite::Truncation,
            seed: Some(config.seed),
            checks: vec![base, envelope, product, product_at_threshold, convergence],
        },
        records,
    })
}

// ----------------------------------------------------------------------------
// discrete sum against the closed form

pub const SUM_ORACLE_TOLERANCE: f64 = 0.10;
pub const SUM_ORACLE_MIN_N1: f64 = 20.0;

/// Grids on which the discrete sum is compared with the closed form: the two
/// presets, plus the same bands and durations over radii large enough to
/// reach `N1 >= 20`.
pub fn sum_oracle_grids() -> Vec<(String, SweepSpec)> {
    let fig1 = Preset::Fig1.spec();
    let fig2 = Preset::Fig2.spec();
    let wide = |spec: SweepSpec, r_max: f64| SweepSpec {
        axis1: Axis::new(Parameter::R, r_max / 40.0, r_max, 40),
        axis2: Axis::new(Parameter::W, spec.axis2.stop / 40.0, spec.axis2.stop, 40),
        ..spec
    };
    vec![
        ("fig1".to_string(), fig1),
        ("fig2".to_string(), fig2),
        ("fig1 band, R to 3 m".to_string(), wide(fig1, 3.0)),
        ("fig2 band, R to 2 km".to_string(), wide(fig2, 2000.0)),
    ]
}

/// Relative deviation of the discrete sum from the closed form on every
/// grid point with `N1 >= 20` and `2eπWT >= 1`.
pub fn sum_oracle_deviations(spec: &SweepSpec, consts: PhysicalConstants) -> Result<Vec<(SignalExtent, f64)>> {
    let extents: Vec<SignalExtent> = spec
        .extents()?
        .into_iter()
        .filter(|e| {
            E_PI * e.radius * e.highest_frequency() / consts.c >= SUM_ORACLE_MIN_N1
                && 2.0 * E_PI * e.half_band * e.time >= 1.0
        })
        .collect();
    extents
        .par_iter()
        .map(|e| {
            let closed = dof_3d_closed_form(e, consts)?.total;
            let sum = dof_3d_discrete_sum(e, consts)?;
            Ok((*e, (sum / closed - 1.0).abs()))
        })
        .collect()
}

pub fn sum_oracle_suite() -> Result<SuiteReport> {
    let consts = PhysicalConstants::default();
    let mut checks = Vec::new();
    for (name, spec) in sum_oracle_grids() {
        let mut check = CheckResult::new(format!("discrete sum within 10% of closed form: {name}"));
        for (_, dev) in sum_oracle_deviations(&spec, consts)? {
            check.at_most(dev, SUM_ORACLE_TOLERANCE);
        }
        checks.push(check);
    }
    Ok(SuiteReport {
        suite: Suite::SumOracle,
        seed: None,
        checks,
    })
}

// ----------------------------------------------------------------------------
// mutual information

/// Fig. 1 parameters: R = 0.25 m, T = 0.5 ms, F = 2.4 GHz, W = 1 kHz.
pub fn fig1_extent() -> SignalExtent {
    SignalExtent {
        radius: 0.25,
        time: 5.0e-4,
        center: 2.4e9,
        half_band: 1.0e3,
    }
}

pub fn mi_suite() -> Result<SuiteReport> {
    let c = PhysicalConstants::default();

    let mut limit = CheckResult::new("constant N_t: |I - rho N_t| <= rho^2 N_t/(2B), B in {10,100,1000}");
    for b in [10usize, 100, 1000] {
        let rho = 1.0;
        // R = 0 grid: one mode per bin
        let grid = FrequencyGrid::new(1.0e6, 1.0e3, 2.0e3 / (b - 1) as f64)?;
        debug_assert_eq!(grid.len(), b);
        let mi = mutual_information(&grid, 0.0, c.c, rho)?;
        limit.at_most((mi.mutual_information - rho).abs(), rho * rho / (2.0 * grid.len() as f64));
        for nt in [4.0, 326.867_178_7] {
            let mi = mutual_information_from_modes(vec![nt; b], rho)?;
            limit.at_most((mi.mutual_information - rho * nt).abs(), rho * rho * nt / (2.0 * b as f64));
        }
    }

    let fig1 = fig1_extent();
    let broad = SignalExtent::new(20.0, 1.0e-5, 2.4e6, 1.2e6)?;
    let mut monotone = CheckResult::new("I non-decreasing in rho over 0..10 step 0.1");
    let mut linear = CheckResult::new("I <= sum N_t rho N_t / N");
    for ext in [fig1, broad] {
        let grid = FrequencyGrid::for_extent(&ext)?;
        let mut prev = 0.0;
        for i in 0..=100 {
            let rho = f64::from(i) / 10.0;
            let mi = mutual_information(&grid, ext.radius, c.c, rho)?;
            monotone.holds(mi.mutual_information >= prev);
            linear.at_most(mi.mutual_information, linearized_information(&mi));
            prev = mi.mutual_information;
        }
    }

    let mut lower = CheckResult::new("I >= rho (eπR(F-W)/c + 1)^2 at rho = 0.01, fig1 extent");
    let rho = 0.01;
    let mi = mutual_information(&FrequencyGrid::for_extent(&fig1)?, fig1.radius, c.c, rho)?;
    lower.at_most(mi_lower_bound(&fig1, c, rho)?, mi.mutual_information);

    let mut jensen = CheckResult::new("increasing profile beats constant profile at equal N");
    for (bins, slope) in [(5usize, 1.0), (20, 0.3), (200, 5.0)] {
        let increasing: Vec<f64> = (0..bins).map(|i| 10.0 + slope * i as f64).collect();
        let mean = increasing.iter().sum::<f64>() / bins as f64;
        for rho in [0.01, 0.1, 1.0, 10.0] {
            let inc = mutual_information_from_modes(increasing.clone(), rho)?;
            let flat = mutual_information_from_modes(vec![mean; bins], rho)?;
            jensen.at_most(flat.mutual_information, inc.mutual_information * (1.0 + 1e-12));
        }
    }

    Ok(SuiteReport {
        suite: Suite::Mi,
        seed: None,
        checks: vec![limit, monotone, linear, lower, jensen],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Bessel, Suite::Truncation, Suite::SumOracle, Suite::Mi] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn check_ratio_bookkeeping() {
        let mut c = CheckResult::new("x");
        c.at_most(0.5, 1.0);
        c.at_most(2.0, 1.0);
        assert_eq!((c.evaluated, c.violations), (2, 1));
        assert_eq!(c.worst_ratio, 2.0);
        c.at_most(0.0, 0.0);
        assert_eq!(c.violations, 1);
    }

    #[test]
    fn samples_are_reproducible_and_in_range() {
        let cfg = TruncationSuiteConfig::with_seed(7);
        let a = truncation_samples(&cfg).unwrap();
        let b = truncation_samples(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), TRUNCATION_SAMPLES);
        for s in &a {
            let (temporal, spatial, _) = crate::truncation::series_arguments(&s.wave, &s.point);
            assert!(spatial <= MAX_SERIES_ARGUMENT * (1.0 + 1e-12));
            assert!(temporal <= MAX_SERIES_ARGUMENT * (1.0 + 1e-9));
            assert!(s.wave.fits_band(cfg.extent.half_band));
        }
        let other = truncation_samples(&TruncationSuiteConfig::with_seed(8)).unwrap();
        assert_ne!(a, other);
    }
}
