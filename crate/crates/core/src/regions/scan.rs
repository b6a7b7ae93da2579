use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::sigma::{SigmaReference, SigmaStatus};
use crate::charts::FNChartPoint;
use crate::error::{Error, Result};
use crate::exec::{try_map_ordered, Execution};
use crate::fuchsian::Word;

/// Upper bound on `cells x classes` for one scan.
pub const MAX_SCAN_WORK: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Plane {
    LLp,
    LTheta,
    LpTheta,
}

impl Plane {
    fn place(self, base: FNChartPoint, c1: f64, c2: f64) -> FNChartPoint {
        match self {
            Plane::LLp => FNChartPoint { l: c1, lp: c2, ..base },
            Plane::LTheta => FNChartPoint {
                l: c1,
                theta: c2,
                ..base
            },
            Plane::LpTheta => FNChartPoint {
                lp: c1,
                theta: c2,
                ..base
            },
        }
    }
}

impl FromStr for Plane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l,lp" => Ok(Plane::LLp),
            "l,theta" => Ok(Plane::LTheta),
            "lp,theta" => Ok(Plane::LpTheta),
            _ => Err(Error::InvalidArgument(format!(
                "unknown plane {s:?} (l,lp | l,theta | lp,theta)"
            ))),
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::LLp => "l,lp",
            Plane::LTheta => "l,theta",
            Plane::LpTheta => "lp,theta",
        })
    }
}

/// `steps` evenly spaced values from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let d = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.start + k as f64 * d).collect()
    }
}

impl FromStr for AxisRange {
    type Err = Error;
    /// `start:end:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("range {s:?} is not start:end:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if steps == 0 || !start.is_finite() || !end.is_finite() || end < start {
            return Err(bad());
        }
        Ok(AxisRange { start, end, steps })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanCell {
    pub coord1: f64,
    pub coord2: f64,
    pub status: SigmaStatus,
    pub witness: Option<Word>,
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub base: FNChartPoint,
    pub plane: Plane,
    pub ranges: [AxisRange; 2],
    pub max_word_len: usize,
    /// Row-major: `coord1` outer, `coord2` inner.
    pub cells: Vec<ScanCell>,
}

impl ScanGrid {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coord1,coord2,status,witness,min_margin\n");
        for c in &self.cells {
            let witness = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{:.16e},{:.16e},{},{},{:.16e}\n",
                c.coord1, c.coord2, c.status, witness, c.min_margin
            ));
        }
        out
    }

    pub fn cell(&self, i: usize, j: usize) -> &ScanCell {
        &self.cells[i * self.ranges[1].steps + j]
    }
}

/// Length-spectrum dominance verdicts over a planar slice through `y0`.
pub fn scan_sigma_slice(
    y0: FNChartPoint,
    plane: Plane,
    ranges: [AxisRange; 2],
    max_len: usize,
    exec: Execution,
) -> Result<ScanGrid> {
    y0.check()?;
    if max_len < 4 {
        return Err(Error::InvalidArgument(format!(
            "scans need word length >= 4, got {max_len}"
        )));
    }
    let reference = SigmaReference::new(y0, max_len, exec)?;
    let (v1, v2) = (ranges[0].values(), ranges[1].values());
    let cells = v1.len() * v2.len();
    if cells.saturating_mul(reference.class_count()) > MAX_SCAN_WORK {
        return Err(Error::ResourceLimit(format!(
            "{cells} cells x {} classes exceeds {MAX_SCAN_WORK}",
            reference.class_count()
        )));
    }
    let points: Vec<(f64, f64)> = v1.iter().flat_map(|&a| v2.iter().map(move |&b| (a, b))).collect();
    for &(a, b) in &points {
        plane
            .place(y0, a, b)
            .check()
            .map_err(|e| Error::InvalidArgument(format!("scan grid leaves the chart at ({a}, {b}): {e}")))?;
    }
    let cells = try_map_ordered(exec, &points, |&(a, b)| {
        let v = reference.verdict(plane.place(y0, a, b), Execution::Sequential)?;
        Ok(ScanCell {
            coord1: a,
            coord2: b,
            status: v.status,
            witness: v.witness,
            min_margin: v.min_margin,
        })
    })?;
    Ok(ScanGrid {
        base: y0,
        plane,
        ranges,
        max_word_len: max_len,
        cells,
    })
}
