use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// A doubly connected domain of conformal modulus `m` (for the round annulus
/// `1 < |z| < R`, `m = log R / 2 pi`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Annulus {
    modulus: f64,
}

impl Annulus {
    pub fn new(modulus: f64) -> Result<Self> {
        if !(modulus > 0.0) || !modulus.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "modulus must be positive, got {modulus}"
            )));
        }
        Ok(Annulus { modulus })
    }

    /// The round annulus `1 < |z| < outer`.
    pub fn round(outer: f64) -> Result<Self> {
        if !(outer > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "outer radius must exceed 1, got {outer}"
            )));
        }
        Self::new(outer.ln() / (2.0 * PI))
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    /// Extremal length of the core curve family, `1/m`.
    pub fn extremal_length(&self) -> f64 {
        1.0 / self.modulus
    }

    /// Hyperbolic length of the core geodesic, `pi/m`. Formed as
    /// `extremal_length() * pi` so that `lambda * pi == l` holds bit for bit.
    pub fn hyperbolic_length(&self) -> f64 {
        self.extremal_length() * PI
    }

    /// Inner radius `r` of the conformally equivalent `r < |z| < 1`.
    pub fn inner_radius(&self) -> f64 {
        (-2.0 * PI * self.modulus).exp()
    }
}

/// `(extremal length, hyperbolic core length)` of an annulus of modulus `m`.
/// The two always satisfy `lambda = l / pi`.
pub fn annulus_quantities(m: f64) -> Result<(f64, f64)> {
    let a = Annulus::new(m)?;
    Ok((a.extremal_length(), a.hyperbolic_length()))
}

/// The annulus `exp(-2 pi^2 / l) < |z| < 1`, whose core geodesic has
/// hyperbolic length `l`.
pub fn annulus_from_core_length(l: f64) -> Result<Annulus> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::InvalidArgument(format!("core length must be positive, got {l}")));
    }
    // log(1/r) / 2 pi with r = exp(-2 pi^2 / l); taken in closed form since
    // r underflows for small l
    Annulus::new(PI / l)
}
