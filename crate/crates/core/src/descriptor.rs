//! Surface descriptors: a marked surface given in exactly one chart, plus
//! the documented fixtures that are not once-holed tori.
//!
//! JSON form (tagged by `"chart"`):
//!
//! ```text
//! {"chart": "slit",   "tau": [re, im], "s": s}
//! {"chart": "fn",     "l": l, "lp": lp, "theta": theta}
//! {"chart": "lambda", "x": [x1, x2, x3]}
//! {"chart": "fixture", "kind": "marked_torus" | "twice_punctured_meet"
//!                            | "twice_punctured_not_meet", "tau": [re, im]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charts::{region_membership, FNChartPoint, RegionClass, SlitChartPoint, BOUNDARY_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "snake_case")]
pub enum SurfaceDescriptor {
    Slit { tau: [f64; 2], s: f64 },
    Fn { l: f64, lp: f64, theta: f64 },
    Lambda { x: [f64; 3] },
    Fixture { kind: FixtureKind, tau: [f64; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    /// The compact torus `C/<1, tau>` with its standard mark.
    MarkedTorus,
    /// `C/<1, tau0>` minus the images of `0` and `1/2`, marked by the
    /// segments `[tau0/2, 1 + tau0/2]` and `[3/4, 3/4 + tau0]`.
    TwicePuncturedMeet,
    /// Same surface and `a`-loop; the `b`-loop is the polygonal arc through
    /// `-1/4, tau0/4, 1/2 - tau0/4, 3/4 + tau0`.
    TwicePuncturedNotMeet,
}

impl SurfaceDescriptor {
    pub fn slit(tau: Complex64, s: f64) -> Self {
        SurfaceDescriptor::Slit {
            tau: [tau.re, tau.im],
            s,
        }
    }

    pub fn fenchel_nielsen(p: FNChartPoint) -> Self {
        SurfaceDescriptor::Fn {
            l: p.l,
            lp: p.lp,
            theta: p.theta,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization is infallible")
    }

    pub fn as_fn(&self) -> Option<FNChartPoint> {
        match *self {
            SurfaceDescriptor::Fn { l, lp, theta } => Some(FNChartPoint { l, lp, theta }),
            _ => None,
        }
    }

    pub fn as_slit(&self) -> Option<SlitChartPoint> {
        match *self {
            SurfaceDescriptor::Slit { tau, s } => Some(SlitChartPoint {
                tau: Complex64::new(tau[0], tau[1]),
                s,
            }),
            _ => None,
        }
    }

    pub fn as_fixture(&self) -> Option<Fixture> {
        match *self {
            SurfaceDescriptor::Fixture { kind, tau } => Some(Fixture {
                kind,
                tau: Complex64::new(tau[0], tau[1]),
            }),
            _ => None,
        }
    }
}

/// Result of [`validate_descriptor`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidDescriptor {
    pub descriptor: SurfaceDescriptor,
    /// `s = 0`, `l' = 0`, or a Λ-point on the boundary of the region.
    pub once_punctured: bool,
    /// The surface is a marked once-holed torus (as opposed to a fixture of
    /// another topological type).
    pub once_holed_torus: bool,
}

pub fn validate_descriptor(d: &SurfaceDescriptor) -> Result<ValidDescriptor> {
    let (once_punctured, once_holed_torus) = match *d {
        SurfaceDescriptor::Slit { .. } => {
            let p = d.as_slit().unwrap();
            p.check()?;
            (p.is_once_punctured(), true)
        }
        SurfaceDescriptor::Fn { .. } => {
            let p = d.as_fn().unwrap();
            p.check()?;
            (p.is_once_punctured(), true)
        }
        SurfaceDescriptor::Lambda { x } => match region_membership(x, BOUNDARY_TOL)? {
            RegionClass::Outside => {
                return Err(Error::InvalidDescriptor(format!(
                    "{x:?} is not an extremal-length triple (Q + 4 > 0 or a coordinate <= 0)"
                )))
            }
            RegionClass::Boundary => (true, true),
            RegionClass::Interior => (false, true),
        },
        SurfaceDescriptor::Fixture { .. } => {
            let f = d.as_fixture().unwrap();
            if !(f.tau.im > 0.0) {
                return Err(Error::InvalidDescriptor(format!(
                    "fixture needs Im tau > 0, got tau = {}",
                    f.tau
                )));
            }
            (false, false)
        }
    };
    Ok(ValidDescriptor {
        descriptor: *d,
        once_punctured,
        once_holed_torus,
    })
}

/// A documented surface outside the three charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixture {
    pub kind: FixtureKind,
    pub tau: Complex64,
}

impl Fixture {
    /// Points removed from `C/<1, tau>`, as reals in `[0, 1)`.
    pub fn punctures(&self) -> &'static [f64] {
        match self.kind {
            FixtureKind::MarkedTorus => &[],
            FixtureKind::TwicePuncturedMeet | FixtureKind::TwicePuncturedNotMeet => &[0.0, 0.5],
        }
    }

    /// Polygonal arcs in `C` whose projections are the marking loops `a`, `b`.
    pub fn mark_arcs(&self) -> [Vec<Complex64>; 2] {
        let t = self.tau;
        let one = Complex64::new(1.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        match self.kind {
            FixtureKind::MarkedTorus => [vec![re(0.0), one], vec![re(0.0), t]],
            FixtureKind::TwicePuncturedMeet => [vec![t / 2.0, one + t / 2.0], vec![re(0.75), re(0.75) + t]],
            FixtureKind::TwicePuncturedNotMeet => [
                vec![t / 2.0, one + t / 2.0],
                vec![re(-0.25), t / 4.0, re(0.5) - t / 4.0, re(0.75) + t],
            ],
        }
    }

    /// Whether the slit torus `C/<1, tau> \ [0, s]` is a subset of this
    /// surface, i.e. every puncture lies on the removed segment.
    pub fn contains_slit_torus(&self, s: f64) -> bool {
        self.kind != FixtureKind::MarkedTorus && self.punctures().iter().all(|&p| p <= s)
    }
}
