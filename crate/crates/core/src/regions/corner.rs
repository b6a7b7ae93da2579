use serde::Serialize;

use super::sigma::{SigmaReference, SigmaStatus, MARGIN_TOL};
use crate::charts::FNChartPoint;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fuchsian::{fn_to_rep, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeDirection {
    LMinus,
    LPlus,
    LpMinus,
    LpPlus,
}

impl ProbeDirection {
    fn apply(self, p: FNChartPoint, eps: f64) -> FNChartPoint {
        match self {
            ProbeDirection::LMinus => FNChartPoint { l: p.l - eps, ..p },
            ProbeDirection::LPlus => FNChartPoint { l: p.l + eps, ..p },
            ProbeDirection::LpMinus => FNChartPoint { lp: p.lp - eps, ..p },
            ProbeDirection::LpPlus => FNChartPoint { lp: p.lp + eps, ..p },
        }
    }

    /// The constraint whose coordinate this probe moves.
    fn target(self) -> Word {
        match self {
            ProbeDirection::LMinus | ProbeDirection::LPlus => Word::u(),
            ProbeDirection::LpMinus | ProbeDirection::LpPlus => Word::commutator(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub direction: ProbeDirection,
    pub eps: f64,
    pub point: FNChartPoint,
    pub status: SigmaStatus,
    /// Shortest violating class, if any.
    pub witness: Option<Word>,
    pub target: Word,
    pub target_margin: f64,
}

impl ProbeResult {
    /// The probe left the dominance region through its target constraint.
    pub fn exits_through_target(&self) -> bool {
        self.status.is_out() && self.target_margin < -MARGIN_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerReport {
    pub base: FNChartPoint,
    pub max_word_len: usize,
    pub active_constraints: Vec<Word>,
    /// Finite-difference gradients of `l(X, u)` and `l(X, uvUV)` in
    /// `(l, l', theta)`.
    pub constraint_gradients: [[f64; 3]; 2],
    pub probe_results: Vec<ProbeResult>,
    /// Decreasing `l` violates the `u` constraint.
    pub l_exit: bool,
    /// Decreasing `l'` violates the commutator constraint.
    pub lp_exit: bool,
    /// The active constraints are the coordinate projections `l` and `l'`.
    pub independent: bool,
}

impl CornerReport {
    /// Both exits fire and the constraints are independent: the wedge
    /// `{l >= l0} ∩ {l' >= l0'}` has a genuine corner at the base point.
    pub fn certified(&self) -> bool {
        self.l_exit && self.lp_exit && self.independent
    }
}

const GRADIENT_STEP: f64 = 1e-5;
const GRADIENT_TOL: f64 = 1e-5;

/// Probes the length-spectrum dominance region of `y0` at `y0 ± eps` along
/// the `l` and `l'` axes.
///
/// The `+eps` probes are recorded as-is; the report never asserts interior
/// membership from them.
pub fn corner_certificate(y0: FNChartPoint, eps: f64, max_len: usize, exec: Execution) -> Result<CornerReport> {
    y0.check()?;
    if y0.is_once_punctured() {
        return Err(Error::Unsupported(
            "the base point has l' = 0 (once-punctured); smoothness of the boundary there is unknown".into(),
        ));
    }
    if max_len < 4 {
        return Err(Error::InvalidArgument(format!(
            "corner probes need classes up to length 4 (the commutator), got {max_len}"
        )));
    }
    if !(eps > 0.0) || eps >= y0.l || eps > y0.lp {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, min(l, l')], got {eps} for {y0:?}"
        )));
    }

    let reference = SigmaReference::new(y0, max_len, exec)?;
    let directions = [
        ProbeDirection::LMinus,
        ProbeDirection::LPlus,
        ProbeDirection::LpMinus,
        ProbeDirection::LpPlus,
    ];
    let mut probe_results = Vec::with_capacity(directions.len());
    for d in directions {
        let point = d.apply(y0, eps);
        let v = reference.verdict(point, exec)?;
        let target = d.target();
        let target_margin = v.margin_of(&target).expect("target class is enumerated");
        probe_results.push(ProbeResult {
            direction: d,
            eps,
            point,
            status: v.status,
            witness: v.witness,
            target,
            target_margin,
        });
    }
    let l_exit = probe_results[0].exits_through_target();
    let lp_exit = probe_results[2].exits_through_target();

    let gradients = [
        constraint_gradient(y0, &Word::u())?,
        constraint_gradient(y0, &Word::commutator())?,
    ];
    let unit = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
    let matches_axes = gradients
        .iter()
        .zip(unit)
        .all(|(g, e)| g.iter().zip(e).all(|(a, b)| (a - b).abs() < GRADIENT_TOL));
    let minor = gradients[0][0] * gradients[1][1] - gradients[0][1] * gradients[1][0];
    let independent = matches_axes && minor.abs() > 0.5;

    Ok(CornerReport {
        base: y0,
        max_word_len: max_len,
        active_constraints: vec![Word::u(), Word::commutator()],
        constraint_gradients: gradients,
        probe_results,
        l_exit,
        lp_exit,
        independent,
    })
}

fn constraint_gradient(p: FNChartPoint, w: &Word) -> Result<[f64; 3]> {
    let h = GRADIENT_STEP.min(p.lp / 2.0);
    let len = |q: FNChartPoint| -> Result<f64> { fn_to_rep(q)?.geodesic_length(w) };
    let dl = (len(FNChartPoint { l: p.l + h, ..p })? - len(FNChartPoint { l: p.l - h, ..p })?) / (2.0 * h);
    let dlp = (len(FNChartPoint { lp: p.lp + h, ..p })? - len(FNChartPoint { lp: p.lp - h, ..p })?) / (2.0 * h);
    let dt = (len(FNChartPoint {
        theta: p.theta + h,
        ..p
    })? - len(FNChartPoint {
        theta: p.theta - h,
        ..p
    })?) / (2.0 * h);
    Ok([dl, dlp, dt])
}
