use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation {
    pub value: f64,
    /// `|last - previous|`.
    pub error_indicator: f64,
    /// Observed convergence order, when three levels allow estimating it.
    pub observed_order: Option<f64>,
}

/// Richardson extrapolation of a refinement history with mesh ratio `ratio`.
///
/// With three or more levels the convergence order is estimated from the last
/// three values; with two, first order is assumed. A history whose last two
/// differences do not contract monotonically is returned unextrapolated.
pub fn refine_and_extrapolate(history: &[f64], ratio: f64) -> Result<Extrapolation> {
    if history.len() < 2 {
        return Err(Error::InvalidArgument("extrapolation needs at least two levels".into()));
    }
    if !(ratio > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "refinement ratio must exceed 1, got {ratio}"
        )));
    }
    let n = history.len();
    let last = history[n - 1];
    let d2 = last - history[n - 2];
    let error_indicator = d2.abs();
    if d2 == 0.0 {
        return Ok(Extrapolation {
            value: last,
            error_indicator,
            observed_order: None,
        });
    }
    if n == 2 {
        return Ok(Extrapolation {
            value: last + d2 / (ratio - 1.0),
            error_indicator,
            observed_order: None,
        });
    }
    let d1 = history[n - 2] - history[n - 3];
    let q = d1 / d2;
    if !(q > 1.0) || !q.is_finite() {
        return Ok(Extrapolation {
            value: last,
            error_indicator,
            observed_order: None,
        });
    }
    Ok(Extrapolation {
        value: last + d2 / (q - 1.0),
        error_indicator,
        observed_order: Some(q.ln() / ratio.ln()),
    })
}
