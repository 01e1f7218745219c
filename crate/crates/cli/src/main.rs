#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use stfdof::bounds::{
    dof_3d_closed_form, dof_space, dof_time, CountingMode, PhysicalConstants, SignalExtent,
};
use stfdof::mutual_info::{mi_lower_bound, mutual_information, FrequencyGrid};
use stfdof::sweep::{run_sweep, Axis, OutputFormat, Preset, SweepRow};
use stfdof::verify::{run_suite, truncation_suite, Suite, SuiteReport, TruncationSuiteConfig, DEFAULT_SEED};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "stfdof", version, about = "Space-time-frequency degrees of freedom of electromagnetic fields")]
struct Cli {
    /// Speed of light in m/s.
    #[arg(long, global = true, env = "STFDOF_SPEED_OF_LIGHT", default_value_t = 3.0e8)]
    speed_of_light: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degrees of freedom for one extent.
    Dof {
        #[command(flatten)]
        extent: ExtentArgs,
        /// Counting used for the narrowband spatial baseline.
        #[arg(long, value_enum, default_value_t = ModeArg::Continuous)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form count over a two-parameter grid.
    Sweep(SweepArgs),
    /// Run a self-checking suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the JSON report on stdout instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Parallel-channel mutual information.
    Mi {
        #[command(flatten)]
        extent: ExtentArgs,
        /// Transmit power ρ.
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Frequency bin spacing in Hz; defaults to 1/T.
        #[arg(long)]
        spacing: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ExtentArgs {
    /// Radius R in metres.
    #[arg(long)]
    radius: f64,
    /// Observation time T in seconds.
    #[arg(long)]
    time: f64,
    /// Centre frequency F in Hz.
    #[arg(long)]
    center: f64,
    /// Half bandwidth W in Hz.
    #[arg(long)]
    halfband: f64,
}

impl ExtentArgs {
    fn extent(&self) -> stfdof::Result<SignalExtent> {
        SignalExtent::new(self.radius, self.time, self.center, self.halfband)
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Outer axis, NAME:START:STOP:COUNT with NAME one of R, W, T, F.
    #[arg(long)]
    axis1: Option<String>,
    /// Inner axis, same syntax as --axis1.
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    time: Option<f64>,
    #[arg(long)]
    center: Option<f64>,
    #[arg(long)]
    halfband: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Continuous,
    Integer,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PresetArg {
    Fig1,
    Fig2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
#[value(rename_all = "snake_case")]
enum SuiteArg {
    Bessel,
    Truncation,
    SumOracle,
    Mi,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Bessel => Suite::Bessel,
            SuiteArg::Truncation => Suite::Truncation,
            SuiteArg::SumOracle => Suite::SumOracle,
            SuiteArg::Mi => Suite::Mi,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<stfdof::Error> for Failure {
    fn from(e: stfdof::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Shared envelope of every JSON document the tool writes.
#[derive(Serialize)]
struct RunReport<T: Serialize> {
    command: String,
    constants: PhysicalConstants,
    #[serde(flatten)]
    body: T,
    violations: usize,
    seed: Option<u64>,
}

fn command_echo() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let consts = PhysicalConstants::new(cli.speed_of_light)?;
    match cli.command {
        Command::Dof { extent, mode, json } => cmd_dof(&extent, mode, json, consts),
        Command::Sweep(args) => cmd_sweep(&args, consts),
        Command::Verify {
            suite,
            seed,
            report,
            json,
        } => cmd_verify(suite.into(), seed, report, json, consts),
        Command::Mi {
            extent,
            rho,
            spacing,
            json,
        } => cmd_mi(&extent, rho, spacing, json, consts),
    }
}

fn cmd_dof(args: &ExtentArgs, mode: ModeArg, json: bool, consts: PhysicalConstants) -> Result<(), Failure> {
    let extent = args.extent()?;
    let d = dof_3d_closed_form(&extent, consts)?;
    let mode = match mode {
        ModeArg::Continuous => CountingMode::Continuous,
        ModeArg::Integer => CountingMode::Integer,
    };
    let time_baseline = dof_time(extent.half_band, extent.time);
    let space_baseline = dof_space(extent.radius, extent.center, consts, mode);
    let mut out = io::stdout().lock();
    if json {
        let report = RunReport {
            command: command_echo(),
            constants: consts,
            body: json!({
                "results": {
                    "extent": extent,
                    "breakdown": d,
                    "time_bandwidth_baseline": time_baseline,
                    "spatial_baseline": space_baseline,
                    "mode": mode,
                }
            }),
            violations: 0,
            seed: None,
        };
        serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "N0    = {}", d.n0)?;
        writeln!(out, "N1    = {}", d.n1)?;
        writeln!(out, "D1    = {}", d.d1)?;
        writeln!(out, "D2    = {}", d.d2)?;
        writeln!(out, "total = {}", d.total)?;
        writeln!(out, "2WT+1 = {time_baseline}")?;
        writeln!(out, "space = {space_baseline}")?;
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, consts: PhysicalConstants) -> Result<(), Failure> {
    let mut spec = match args.preset {
        Some(PresetArg::Fig1) => Preset::Fig1.spec(),
        Some(PresetArg::Fig2) => Preset::Fig2.spec(),
        None => {
            let (Some(_), Some(_)) = (&args.axis1, &args.axis2) else {
                return Err(Failure::Usage("sweep needs --preset or both --axis1 and --axis2".into()));
            };
            let mut spec = Preset::Fig1.spec();
            spec.fixed = SignalExtent {
                radius: 0.0,
                time: 0.0,
                center: 0.0,
                half_band: 0.0,
            };
            spec
        }
    };
    if let Some(a) = &args.axis1 {
        spec.axis1 = a.parse::<Axis>()?;
    }
    if let Some(a) = &args.axis2 {
        spec.axis2 = a.parse::<Axis>()?;
    }
    let fixed = &mut spec.fixed;
    fixed.radius = args.radius.unwrap_or(fixed.radius);
    fixed.time = args.time.unwrap_or(fixed.time);
    fixed.center = args.center.unwrap_or(fixed.center);
    fixed.half_band = args.halfband.unwrap_or(fixed.half_band);
    spec.format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };

    let rows = run_sweep(&spec, consts)?;
    let mut buf = Vec::new();
    match spec.format {
        OutputFormat::Csv => {
            writeln!(buf, "{}", SweepRow::CSV_HEADER)?;
            for row in &rows {
                writeln!(buf, "{}", row.to_csv())?;
            }
        }
        OutputFormat::Json => {
            let report = RunReport {
                command: command_echo(),
                constants: consts,
                body: json!({ "sweep": spec, "rows": rows }),
                violations: 0,
                seed: None,
            };
            serde_json::to_writer_pretty(&mut buf, &report).map_err(io::Error::from)?;
            writeln!(buf)?;
        }
    }
    match &args.out {
        Some(path) => fs::write(path, buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

fn print_summary(out: &mut impl Write, report: &SuiteReport) -> io::Result<()> {
    writeln!(out, "suite {}", report.suite)?;
    if let Some(seed) = report.seed {
        writeln!(out, "seed {seed}")?;
    }
    for c in &report.checks {
        writeln!(
            out,
            "[{}] {} (evaluated {}, violations {}, worst ratio {:.6e})",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.evaluated,
            c.violations,
            c.worst_ratio
        )?;
    }
    writeln!(out, "total violations {}", report.violations())
}

fn cmd_verify(
    suite: Suite,
    seed: u64,
    report_path: Option<PathBuf>,
    json: bool,
    consts: PhysicalConstants,
) -> Result<(), Failure> {
    let (report, records) = if suite == Suite::Truncation {
        let config = TruncationSuiteConfig {
            consts,
            ..TruncationSuiteConfig::with_seed(seed)
        };
        let outcome = truncation_suite(&config)?;
        (outcome.report, Some(outcome.records))
    } else {
        (run_suite(suite, seed)?, None)
    };
    let full = RunReport {
        command: command_echo(),
        constants: consts,
        body: json!({ "results": { "checks": report.checks, "records": records } }),
        violations: report.violations(),
        seed: report.seed,
    };
    if let Some(path) = report_path {
        fs::write(path, serde_json::to_vec_pretty(&full).map_err(io::Error::from)?)?;
    }
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &full).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        print_summary(&mut out, &report)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_mi(
    args: &ExtentArgs,
    rho: f64,
    spacing: Option<f64>,
    json: bool,
    consts: PhysicalConstants,
) -> Result<(), Failure> {
    let extent = args.extent()?;
    if !(rho >= 0.0) {
        return Err(Failure::Usage(format!("rho must be non-negative, got {rho}")));
    }
    let grid = match spacing {
        Some(s) => FrequencyGrid::new(extent.center, extent.half_band, s)?,
        None => FrequencyGrid::for_extent(&extent)?,
    };
    let mi = mutual_information(&grid, extent.radius, consts.c, rho)?;
    let bound = mi_lower_bound(&extent, consts, rho)?;
    let min = mi.modes_per_bin.iter().copied().fold(f64::INFINITY, f64::min);
    let max = mi.modes_per_bin.iter().copied().fold(0.0, f64::max);
    let mut out = io::stdout().lock();
    if json {
        let report = RunReport {
            command: command_echo(),
            constants: consts,
            body: json!({
                "results": {
                    "extent": extent,
                    "bins": grid.len(),
                    "spacing": grid.spacing(),
                    "modes_min": min,
                    "modes_max": max,
                    "mi": mi,
                    "lower_bound": bound,
                }
            }),
            violations: 0,
            seed: None,
        };
        serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "bins        = {}", grid.len())?;
        writeln!(out, "spacing     = {} Hz", grid.spacing())?;
        writeln!(out, "N_t min     = {min}")?;
        writeln!(out, "N_t max     = {max}")?;
        writeln!(out, "N           = {}", mi.total_modes)?;
        writeln!(out, "I           = {} nats", mi.mutual_information)?;
        writeln!(out, "lower bound = {bound}")?;
    }
    Ok(())
}
