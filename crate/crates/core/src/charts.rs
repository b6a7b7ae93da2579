//! Coordinate charts on the space of marked once-holed tori, and the exact
//! arithmetic of the extremal-length region
//! `L = { x in R+^3 : Q(x) + 4 <= 0 }`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance on `Q(x) + 4` for boundary classification.
pub const BOUNDARY_TOL: f64 = 1e-9;

const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

/// Unit vector spanning the `-1` eigenline `x1 = x2 = x3` of `Q`.
pub const DIAGONAL: [f64; 3] = [INV_SQRT3, INV_SQRT3, INV_SQRT3];

/// A value in `[0, +inf]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    /// Reciprocal with `1/0 = +inf` and `1/(+inf) = 0`.
    pub fn recip(self) -> ExtReal {
        match self {
            ExtReal::Infinite => ExtReal::Finite(0.0),
            ExtReal::Finite(0.0) => ExtReal::Infinite,
            ExtReal::Finite(x) => ExtReal::Finite(1.0 / x),
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Infinite => None,
        }
    }
}

/// The horizontal strip `{ 0 < Im z < height }` in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub height: ExtReal,
}

impl Strip {
    pub fn contains(&self, tau: Complex64) -> bool {
        if tau.im <= 0.0 {
            return false;
        }
        match self.height {
            ExtReal::Infinite => true,
            ExtReal::Finite(h) => tau.im < h,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.height == ExtReal::Finite(0.0)
    }

    pub fn is_half_plane(&self) -> bool {
        self.height == ExtReal::Infinite
    }
}

/// Strip of height `1/lambda`.
pub fn strip_of(lambda: ExtReal) -> Result<Strip> {
    if let ExtReal::Finite(x) = lambda {
        if !(x >= 0.0) || x.is_infinite() {
            return Err(Error::InvalidArgument(format!(
                "extremal length must lie in [0, +inf], got {x}"
            )));
        }
    }
    Ok(Strip { height: lambda.recip() })
}

/// `Q(x) = x1^2 + x2^2 + x3^2 - 2(x1 x2 + x2 x3 + x3 x1)`.
pub fn q_form(x: [f64; 3]) -> f64 {
    let [a, b, c] = x;
    a * a + b * b + c * c - 2.0 * (a * b + b * c + c * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionClass {
    Interior,
    Boundary,
    Outside,
}

/// Classifies a triple against `L` by the sign of `Q(x) + 4`.
pub fn region_membership(x: [f64; 3], tol: f64) -> Result<RegionClass> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if x.iter().any(|&c| !(c > 0.0)) {
        return Ok(RegionClass::Outside);
    }
    let g = q_form(x) + 4.0;
    Ok(if g < -tol {
        RegionClass::Interior
    } else if g.abs() <= tol {
        RegionClass::Boundary
    } else {
        RegionClass::Outside
    })
}

/// Extremal lengths of the classes of `a`, `b` and `ab^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaTriple {
    pub x: [f64; 3],
}

impl LambdaTriple {
    pub fn new(x: [f64; 3]) -> Result<Self> {
        if x.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "extremal lengths must be positive and finite, got {x:?}"
            )));
        }
        Ok(LambdaTriple { x })
    }

    /// `Q(x) + 4`; non-positive on `L`.
    pub fn region_gap(&self) -> f64 {
        q_form(self.x) + 4.0
    }

    pub fn classify(&self, tol: f64) -> Result<RegionClass> {
        region_membership(self.x, tol)
    }
}

/// Decomposition `x = zeta + t e` along `V2 (+) V-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSplit {
    pub zeta: [f64; 3],
    pub t: f64,
}

impl EigenSplit {
    pub fn reconstruct(&self) -> [f64; 3] {
        let mut out = self.zeta;
        for (o, e) in out.iter_mut().zip(DIAGONAL) {
            *o += self.t * e;
        }
        out
    }

    /// `Q` evaluated through the eigen-decomposition: `2|zeta|^2 - t^2`.
    pub fn q_value(&self) -> f64 {
        2.0 * norm_sq(self.zeta) - self.t * self.t
    }
}

pub fn eigen_split(x: [f64; 3]) -> EigenSplit {
    let t = dot(x, DIAGONAL);
    let zeta = [x[0] - t * INV_SQRT3, x[1] - t * INV_SQRT3, x[2] - t * INV_SQRT3];
    EigenSplit { zeta, t }
}

/// Height `t > 0` of `boundary(L)` above `zeta in V2` along `e`:
/// the root of `2|zeta|^2 - t^2 + 4 = 0`.
///
/// Every coordinate of `zeta + t e` is positive for all of `V2`: a component
/// of a vector in `V2` satisfies `zeta_i^2 <= (2/3)|zeta|^2 < t^2/3`. The
/// positivity error is therefore never produced for finite input.
pub fn region_height(zeta: [f64; 3]) -> Result<f64> {
    let scale = zeta.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
    if (zeta[0] + zeta[1] + zeta[2]).abs() > 1e-9 * scale {
        return Err(Error::InvalidArgument(format!(
            "{zeta:?} does not lie in the plane x1 + x2 + x3 = 0"
        )));
    }
    let t = (2.0 * norm_sq(zeta) + 4.0).sqrt();
    let p = EigenSplit { zeta, t }.reconstruct();
    if p.iter().any(|&c| !(c > 0.0)) {
        return Err(Error::PositivityViolation(p));
    }
    Ok(t)
}

/// Flat-torus extremal lengths `(1, |tau|^2, |1 - tau|^2) / Im tau` of the
/// once-punctured torus `C/<1, tau>` minus a point.
pub fn lambda_of_punctured_torus(tau: Complex64) -> Result<LambdaTriple> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Im tau must be positive, got {}",
            tau.im
        )));
    }
    let y = tau.im;
    LambdaTriple::new([1.0 / y, tau.norm_sqr() / y, (1.0 - tau).norm_sqr() / y])
}

/// Point `(tau, s)` of the slit chart: the torus `C/<1, tau>` minus the
/// projection of the segment `[0, s]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitChartPoint {
    pub tau: Complex64,
    pub s: f64,
}

impl SlitChartPoint {
    pub fn new(tau: Complex64, s: f64) -> Result<Self> {
        let p = SlitChartPoint { tau, s };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.tau.im > 0.0) || !self.tau.re.is_finite() || !self.tau.im.is_finite() {
            return Err(Error::InvalidDescriptor(format!(
                "slit chart needs Im tau > 0, got tau = {}",
                self.tau
            )));
        }
        if !(0.0..1.0).contains(&self.s) {
            return Err(Error::InvalidDescriptor(format!(
                "slit length must lie in [0, 1), got {}",
                self.s
            )));
        }
        Ok(())
    }

    pub fn is_once_punctured(&self) -> bool {
        self.s == 0.0
    }
}

/// Fenchel-Nielsen point `(l, l', theta)`: length of `a`, infimal length of
/// the commutator class, and twist along the `a`-geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FNChartPoint {
    pub l: f64,
    pub lp: f64,
    pub theta: f64,
}

impl FNChartPoint {
    pub fn new(l: f64, lp: f64, theta: f64) -> Result<Self> {
        let p = FNChartPoint { l, lp, theta };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.l > 0.0) || !self.l.is_finite() {
            return Err(Error::InvalidDescriptor(format!("l must be positive, got {}", self.l)));
        }
        if !(self.lp >= 0.0) || !self.lp.is_finite() {
            return Err(Error::InvalidDescriptor(format!(
                "l' must be non-negative, got {}",
                self.lp
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidDescriptor(format!(
                "twist must be finite, got {}",
                self.theta
            )));
        }
        Ok(())
    }

    /// `l' = 0`: a once-punctured torus on the boundary of the space.
    pub fn is_once_punctured(&self) -> bool {
        self.lp == 0.0
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm_sq(a: [f64; 3]) -> f64 {
    dot(a, a)
}
