//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stfdof::bounds::{dof_3d_closed_form, dof_time, PhysicalConstants, SignalExtent, E_PI};
use stfdof::sweep::{run_sweep, Preset, SweepRow};
use stfdof::verify::{
    bessel_suite, mi_suite, sum_oracle_deviations, sum_oracle_grids, truncation_suite, CheckResult,
    SuiteReport, TruncationSuiteConfig, CHECK_BASE_BOUND, CHECK_CONVERGENCE, CHECK_ENVELOPE,
    CHECK_PRODUCT_BOUND, CHECK_PRODUCT_BOUND_AT_THRESHOLD, DEFAULT_SEED, SUM_ORACLE_TOLERANCE,
};

const IDENTITY_TOLERANCE: f64 = 1e-9;
const LINEAR_CORRELATION: f64 = 0.999;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn describe(c: &CheckResult) -> String {
    format!(
        "{}: {} evaluated, {} violations, worst ratio {:.3e}",
        c.name, c.evaluated, c.violations, c.worst_ratio
    )
}

fn check<'a>(report: &'a SuiteReport, name: &str) -> &'a CheckResult {
    report
        .check(name)
        .unwrap_or_else(|| panic!("suite {} has no check {name:?}", report.suite))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = PhysicalConstants::default();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let t = log_uniform(&mut rng, 1e-7, 1e-2);
        let f = log_uniform(&mut rng, 1e3, 1e10);
        let w = rng.gen_range(0.0..=f);
        let ext = SignalExtent::new(0.0, t, f, w).unwrap();
        let total = dof_3d_closed_form(&ext, c).unwrap().total;
        worst = worst.max(rel(total, 7.0 * E_PI * t * w / 3.0 + 1.0));
    }
    for _ in 0..50 {
        let r = log_uniform(&mut rng, 1e-3, 1e3);
        let f = log_uniform(&mut rng, 1e3, 1e10);
        let ext = SignalExtent::new(r, 0.0, f, 0.0).unwrap();
        let total = dof_3d_closed_form(&ext, c).unwrap().total;
        worst = worst.max(rel(total, (E_PI * r * f / c.c + 1.0).powi(2)));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= IDENTITY_TOLERANCE && within(elapsed, 1.0),
        format!("worst relative gap {worst:.3e} (tol 1e-9), {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let c = PhysicalConstants::default();
    let mut parts = Vec::new();
    let mut total = 0;
    let mut worst: f64 = 0.0;
    let mut preset_points = 0;
    for (name, spec) in sum_oracle_grids() {
        let devs = sum_oracle_deviations(&spec, c).unwrap();
        let w = devs.iter().map(|(_, d)| *d).fold(0.0, f64::max);
        if name == "fig1" || name == "fig2" {
            preset_points += devs.len();
        }
        parts.push(format!("{name}: {} pts worst {w:.4}", devs.len()));
        total += devs.len();
        worst = worst.max(w);
    }
    let elapsed = start.elapsed();
    outcome(
        total > 0 && worst <= SUM_ORACLE_TOLERANCE && within(elapsed, 10.0),
        format!(
            "worst deviation {worst:.4} over {total} qualifying points ({preset_points} on the presets) [{}], {elapsed:.2?}",
            parts.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    results.push((1, "asymptotic identities", criterion_1()));
    results.push((2, "discrete-sum oracle", criterion_2()));

    let start = Instant::now();
    let truncation = truncation_suite(&TruncationSuiteConfig::with_seed(DEFAULT_SEED)).unwrap();
    let truncation_time = start.elapsed();
    let t = &truncation.report;
    let base = check(t, CHECK_BASE_BOUND);
    results.push((
        3,
        "base truncation bound 2/e",
        outcome(
            base.passed() && base.evaluated == 200 && within(truncation_time, 30.0),
            format!("{} ({truncation_time:.2?} for the whole suite)", describe(base)),
        ),
    ));
    let envelope = check(t, CHECK_ENVELOPE);
    results.push((4, "decay envelope", outcome(envelope.passed() && envelope.evaluated == 2000, describe(envelope))));
    let product = check(t, CHECK_PRODUCT_BOUND);
    let at_threshold = check(t, CHECK_PRODUCT_BOUND_AT_THRESHOLD);
    results.push((
        5,
        "analytic bound dominance",
        outcome(
            product.passed() && product.evaluated > 0,
            format!("{}; {}", describe(product), describe(at_threshold)),
        ),
    ));

    let start = Instant::now();
    let bessel = bessel_suite().unwrap();
    let bessel_time = start.elapsed();
    let (grid, recurrence) = (&bessel.checks[0], &bessel.checks[1]);
    results.push((
        6,
        "Bessel bound grid and recurrence",
        outcome(
            bessel.passed() && grid.evaluated == 51 * 501 && within(bessel_time, 5.0),
            format!("{}; {}; {bessel_time:.2?}", describe(grid), describe(recurrence)),
        ),
    ));

    let convergence = check(t, CHECK_CONVERGENCE);
    results.push((
        7,
        "series-oracle convergence",
        outcome(convergence.passed() && convergence.evaluated == 200, describe(convergence)),
    ));

    let mi = mi_suite().unwrap();
    let failing: Vec<String> = mi.checks.iter().filter(|c| !c.passed()).map(describe).collect();
    let limit = &mi.checks[0];
    results.push((
        8,
        "mutual information limits",
        outcome(
            mi.passed(),
            if failing.is_empty() {
                format!("all {} checks pass; {}", mi.checks.len(), describe(limit))
            } else {
                failing.join("; ")
            },
        ),
    ));

    results.push((9, "figure-preset shape", criterion_9()));

    let mut failed = 0;
    for (id, name, o) in &results {
        println!("[{}] criterion {id}: {name} -- {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

fn criterion_9() -> Outcome {
    let c = PhysicalConstants::default();
    let mut non_monotone = 0;
    for preset in Preset::ALL {
        let spec = preset.spec();
        let rows = run_sweep(&spec, c).unwrap();
        let (n1, n2) = (spec.axis1.count, spec.axis2.count);
        let at = |i: usize, j: usize| -> &SweepRow { &rows[i * n2 + j] };
        for i in 0..n1 {
            for j in 0..n2 {
                if i > 0 && at(i, j).total < at(i - 1, j).total {
                    non_monotone += 1;
                }
                if j > 0 && at(i, j).total < at(i, j - 1).total {
                    non_monotone += 1;
                }
            }
        }
    }
    let spec = Preset::Fig2.spec();
    let rows = run_sweep(&spec, c).unwrap();
    let slice = &rows[..spec.axis2.count];
    let totals: Vec<f64> = slice.iter().map(|r| r.total).collect();
    let baseline: Vec<f64> = slice.iter().map(|r| dof_time(r.W, r.T)).collect();
    let corr = pearson(&totals, &baseline);
    outcome(
        corr > LINEAR_CORRELATION && non_monotone == 0,
        format!(
            "fig2 R={} slice correlation with 2WT+1 = {corr:.6}; {non_monotone} non-monotone steps",
            slice[0].R
        ),
    )
}
