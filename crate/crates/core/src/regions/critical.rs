use std::f64::consts::PI;

use serde::Serialize;

use crate::charts::{strip_of, ExtReal, FNChartPoint, Strip};
use crate::descriptor::{validate_descriptor, FixtureKind, SurfaceDescriptor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Critical {
    Available(f64),
    Unavailable(String),
}

impl Critical {
    pub fn value(&self) -> Option<f64> {
        match self {
            Critical::Available(v) => Some(*v),
            Critical::Unavailable(_) => None,
        }
    }
}

/// Critical extremal lengths of `a` for holomorphic (`lambda_a`) and
/// conformal (`lambda_c`) maps into the reference surface, and the limit
/// `lambda_inf` of the finite-degree thresholds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalLengths {
    pub lambda_a: Critical,
    pub lambda_c: Critical,
    pub lambda_inf: Critical,
    pub chart_note: String,
}

const NEEDS_HYPERBOLIC: &str =
    "requires the hyperbolic length of a, which this chart does not carry (no uniformization bridge)";
const NEEDS_EXTREMAL: &str =
    "requires the extremal length of a, which this chart does not carry (no uniformization bridge)";

/// `lambda_a = lambda_inf = l/pi` from hyperbolic data; `lambda_c = lambda(Y0)`
/// from extremal data. Each chart supplies only one of the two.
pub fn critical_lengths(y0: &SurfaceDescriptor) -> Result<CriticalLengths> {
    validate_descriptor(y0)?;
    let unavailable = |why: &str| Critical::Unavailable(why.to_string());
    Ok(match *y0 {
        SurfaceDescriptor::Fn { l, .. } => CriticalLengths {
            lambda_a: Critical::Available(l / PI),
            lambda_inf: Critical::Available(l / PI),
            lambda_c: unavailable(NEEDS_EXTREMAL),
            chart_note: "Fenchel-Nielsen chart: lambda_a = lambda_inf = l / pi".into(),
        },
        SurfaceDescriptor::Slit { tau, .. } => CriticalLengths {
            lambda_a: unavailable(NEEDS_HYPERBOLIC),
            lambda_inf: unavailable(NEEDS_HYPERBOLIC),
            lambda_c: Critical::Available(1.0 / tau[1]),
            chart_note: "slit chart: lambda_c = lambda(Y0) = 1 / Im tau".into(),
        },
        SurfaceDescriptor::Lambda { x } => CriticalLengths {
            lambda_a: unavailable(NEEDS_HYPERBOLIC),
            lambda_inf: unavailable(NEEDS_HYPERBOLIC),
            lambda_c: Critical::Available(x[0]),
            chart_note: "extremal-length chart: lambda_c = lambda(Y0) = x1".into(),
        },
        SurfaceDescriptor::Fixture {
            kind: FixtureKind::MarkedTorus,
            tau,
        } => CriticalLengths {
            lambda_a: Critical::Available(0.0),
            lambda_inf: Critical::Available(0.0),
            lambda_c: Critical::Available(1.0 / tau[1]),
            chart_note: "marked torus: every marked once-holed torus maps holomorphically into it, \
                         l(Y0) = 0 by convention; lambda_c = 1 / Im tau"
                .into(),
        },
        SurfaceDescriptor::Fixture { tau, .. } => CriticalLengths {
            lambda_a: unavailable(NEEDS_HYPERBOLIC),
            lambda_inf: unavailable(NEEDS_HYPERBOLIC),
            lambda_c: Critical::Available(1.0 / tau[1]),
            chart_note: "twice-punctured torus fixture: lambda_c = lambda(Y0) = 1 / Im tau0".into(),
        },
    })
}

/// Whether the closure of the strip touches the image of the relevant region.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalLine {
    /// No map exists on the critical line itself.
    Excluded,
    /// The region meets the critical line at exactly this point.
    MeetsAt([f64; 2]),
    /// The region meets the critical line at exactly one (uncomputed) point.
    MeetsOnce,
    DoesNotMeet,
    /// Either can happen depending on the marking.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripEntry {
    pub quantity: &'static str,
    pub lambda: f64,
    pub strip: Strip,
    pub critical_line: CriticalLine,
    pub note: String,
}

/// Strips `{0 < Im tau < 1/lambda}` for each available critical length.
pub fn strip_report(y0: &SurfaceDescriptor) -> Result<Vec<StripEntry>> {
    let cl = critical_lengths(y0)?;
    let mut out = Vec::new();
    if let Some(la) = cl.lambda_a.value() {
        out.push(StripEntry {
            quantity: "lambda_a",
            lambda: la,
            strip: strip_of(ExtReal::Finite(la))?,
            critical_line: CriticalLine::Excluded,
            note: if la == 0.0 {
                "every slit torus admits a holomorphic map: full half-plane".into()
            } else {
                "slit tori with Im tau >= 1/lambda_a admit no holomorphic map; the critical line is excluded".into()
            },
        });
    }
    if let Some(lc) = cl.lambda_c.value() {
        let critical_line = match *y0 {
            SurfaceDescriptor::Fixture {
                kind: FixtureKind::TwicePuncturedMeet,
                tau,
            } => CriticalLine::MeetsAt(tau),
            SurfaceDescriptor::Fixture {
                kind: FixtureKind::TwicePuncturedNotMeet,
                ..
            } => CriticalLine::DoesNotMeet,
            SurfaceDescriptor::Slit { .. } | SurfaceDescriptor::Lambda { .. } => CriticalLine::MeetsOnce,
            _ => CriticalLine::Undetermined,
        };
        out.push(StripEntry {
            quantity: "lambda_c",
            lambda: lc,
            strip: strip_of(ExtReal::Finite(lc))?,
            critical_line,
            note: "conformal maps may exist on the critical line Im tau = 1/lambda_c".into(),
        });
    }
    if out.is_empty() {
        return Err(Error::Unsupported(
            "no critical length is available for this descriptor".into(),
        ));
    }
    Ok(out)
}

/// Handle covering surface. A marked once-holed torus (or torus) is its own
/// handle cover; for other fixtures the cover is a marked once-holed torus
/// that cannot be built without uniformization.
pub fn handle_cover(y0: &SurfaceDescriptor) -> Result<SurfaceDescriptor> {
    let v = validate_descriptor(y0)?;
    match *y0 {
        SurfaceDescriptor::Fixture {
            kind: FixtureKind::TwicePuncturedMeet | FixtureKind::TwicePuncturedNotMeet,
            ..
        } => Err(Error::Unsupported(
            "the handle covering surface of a twice-punctured torus is a marked once-holed torus, \
                 but constructing it requires uniformization"
                .into(),
        )),
        _ => {
            debug_assert!(v.once_holed_torus || matches!(y0, SurfaceDescriptor::Fixture { .. }));
            Ok(*y0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCheck {
    pub hyperbolic_length: f64,
    pub lambda_a: f64,
    pub annulus_modulus: f64,
    pub annulus_extremal_length: f64,
    /// `l(Y0) < pi / m`, equivalently `lambda_a < 1/m`.
    pub consistent: bool,
}

/// Checks a surface against an annulus of modulus `m` whose core lies in the
/// class of `a`: such a pair requires `l(Y0) < pi/m`.
pub fn lambda_chain_check(y0: FNChartPoint, modulus: f64) -> Result<ChainCheck> {
    y0.check()?;
    if !(modulus > 0.0) || !modulus.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "modulus must be positive, got {modulus}"
        )));
    }
    Ok(ChainCheck {
        hyperbolic_length: y0.l,
        lambda_a: y0.l / PI,
        annulus_modulus: modulus,
        annulus_extremal_length: 1.0 / modulus,
        consistent: y0.l < PI / modulus,
    })
}
