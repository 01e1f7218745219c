//! Two-dimensional parameter sweeps of the closed-form count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{dof_3d_closed_form, PhysicalConstants, SignalExtent};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    R,
    W,
    T,
    F,
}

impl Parameter {
    fn set(self, extent: &mut SignalExtent, value: f64) {
        match self {
            Parameter::R => extent.radius = value,
            Parameter::W => extent.half_band = value,
            Parameter::T => extent.time = value,
            Parameter::F => extent.center = value,
        }
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Parameter::R),
            "W" | "w" => Ok(Parameter::W),
            "T" | "t" => Ok(Parameter::T),
            "F" | "f" => Ok(Parameter::F),
            other => Err(Error::InvalidSweep(format!(
                "unknown axis parameter {other:?}, expected one of R, W, T, F"
            ))),
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Parameter::R => "R",
            Parameter::W => "W",
            Parameter::T => "T",
            Parameter::F => "F",
        };
        f.write_str(s)
    }
}

/// Evenly spaced values `start..=stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub parameter: Parameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(parameter: Parameter, start: f64, stop: f64, count: usize) -> Self {
        Self {
            parameter,
            start,
            stop,
            count,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidSweep(format!(
                "axis {} needs at least 2 points, got {}",
                self.parameter, self.count
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::InvalidSweep(format!(
                "axis {} needs start < stop, got {}..{}",
                self.parameter, self.start, self.stop
            )));
        }
        Ok(())
    }
}

/// Axis syntax `NAME:START:STOP:COUNT`, e.g. `R:0.005:0.25:50`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, start, stop, count] = parts[..] else {
            return Err(Error::InvalidSweep(format!(
                "axis {s:?} is not of the form NAME:START:STOP:COUNT"
            )));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidSweep(format!("bad number {v:?} in axis {s:?}")))
        };
        let count = count
            .parse::<usize>()
            .map_err(|_| Error::InvalidSweep(format!("bad count {count:?} in axis {s:?}")))?;
        Ok(Axis::new(name.parse()?, num(start)?, num(stop)?, count))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Outer axis.
    pub axis1: Axis,
    /// Inner axis.
    pub axis2: Axis,
    /// Values for the parameters not swept.
    pub fixed: SignalExtent,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        self.axis2.validate()?;
        if self.axis1.parameter == self.axis2.parameter {
            return Err(Error::InvalidSweep(format!(
                "both axes sweep {}",
                self.axis1.parameter
            )));
        }
        Ok(())
    }

    /// Extents in output order: axis1 outer, axis2 inner.
    pub fn extents(&self) -> Result<Vec<SignalExtent>> {
        self.validate()?;
        let (outer, inner) = (self.axis1.values(), self.axis2.values());
        let mut out = Vec::with_capacity(outer.len() * inner.len());
        for &v1 in &outer {
            for &v2 in &inner {
                let mut e = self.fixed;
                self.axis1.parameter.set(&mut e, v1);
                self.axis2.parameter.set(&mut e, v2);
                e.validate()?;
                out.push(e);
            }
        }
        Ok(out)
    }
}

/// Named parameter sets for the two reference surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// F = 2.4 GHz, T = 0.5 ms, R up to 2λ = 0.25 m, W up to 1 kHz.
    Fig1,
    /// F = 2.4 MHz, T = 1 µs, R up to 25 m, W up to F.
    Fig2,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            other => Err(Error::InvalidSweep(format!("unknown preset {other:?}"))),
        }
    }
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::Fig1, Preset::Fig2];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
        }
    }

    pub fn spec(self) -> SweepSpec {
        match self {
            Preset::Fig1 => SweepSpec {
                axis1: Axis::new(Parameter::R, 0.005, 0.25, 50),
                axis2: Axis::new(Parameter::W, 20.0, 1.0e3, 50),
                fixed: SignalExtent {
                    radius: 0.0,
                    time: 5.0e-4,
                    center: 2.4e9,
                    half_band: 0.0,
                },
                format: OutputFormat::Csv,
            },
            Preset::Fig2 => SweepSpec {
                axis1: Axis::new(Parameter::R, 0.5, 25.0, 50),
                axis2: Axis::new(Parameter::W, 4.8e4, 2.4e6, 50),
                fixed: SignalExtent {
                    radius: 0.0,
                    time: 1.0e-6,
                    center: 2.4e6,
                    half_band: 0.0,
                },
                format: OutputFormat::Csv,
            },
        }
    }
}

/// One grid point: the inputs alongside the closed-form breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SweepRow {
    pub R: f64,
    pub W: f64,
    pub T: f64,
    pub F: f64,
    pub N0: f64,
    pub N1: f64,
    pub D1: f64,
    pub D2: f64,
    pub total: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "R,W,T,F,N0,N1,D1,D2,total";

    pub fn evaluate(extent: &SignalExtent, consts: PhysicalConstants) -> Result<Self> {
        let d = dof_3d_closed_form(extent, consts)?;
        Ok(Self {
            R: extent.radius,
            W: extent.half_band,
            T: extent.time,
            F: extent.center,
            N0: d.n0,
            N1: d.n1,
            D1: d.d1,
            D2: d.d2,
            total: d.total,
        })
    }

    pub fn extent(&self) -> SignalExtent {
        SignalExtent {
            radius: self.R,
            time: self.T,
            center: self.F,
            half_band: self.W,
        }
    }

    /// Shortest round-trip decimal for every field.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.R, self.W, self.T, self.F, self.N0, self.N1, self.D1, self.D2, self.total
        )
    }
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec, consts: PhysicalConstants) -> Result<Vec<SweepRow>> {
    spec.extents()?
        .par_iter()
        .map(|e| SweepRow::evaluate(e, consts))
        .collect()
}
