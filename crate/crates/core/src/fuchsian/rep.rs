use nalgebra::Matrix2;

use super::word::{Letter, Word};
use crate::charts::FNChartPoint;
use crate::error::{Error, Result};

/// `|tr|` within this distance of 2 is treated as parabolic (length 0).
pub const PARABOLIC_TOL: f64 = 1e-9;

/// A pair `(A, B)` in `SL(2, R)` realizing a Fenchel-Nielsen point.
///
/// Normalization: `A = diag(e^{l/2}, e^{-l/2})` with axis the imaginary
/// geodesic; `B = T_theta B0` where `B0` is the symmetric hyperbolic element
/// whose axis is the unit half-circle and `T_theta = diag(e^{theta/2},
/// e^{-theta/2})` slides it along the axis of `A` toward `infinity` (the
/// attracting fixed point of `A`) for positive twist. `B0` is fixed by
/// `tr[A, B] = -2 cosh(l'/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    a: Matrix2<f64>,
    b: Matrix2<f64>,
    a_inv: Matrix2<f64>,
    b_inv: Matrix2<f64>,
    source: FNChartPoint,
}

pub fn fn_to_rep(p: FNChartPoint) -> Result<Representation> {
    p.check()?;
    let x = 2.0 * (p.l / 2.0).cosh();
    let k = 2.0 * (p.lp / 2.0).cosh();
    // x^2/4 - 1 = sinh^2(l/2), written that way to avoid cancellation
    let sh = (p.l / 2.0).sinh();
    let y2 = (x * x + k - 2.0) / (sh * sh);
    let y = y2.sqrt();
    assert!(y >= 2.0 - 1e-12, "no hyperbolic B0 for {p:?}: tr B0 = {y}");
    let half_m = (y / 2.0).max(1.0).acosh();
    let (c, s) = (half_m.cosh(), half_m.sinh());
    let b0 = Matrix2::new(c, s, s, c);
    let (ea, et) = ((p.l / 2.0).exp(), (p.theta / 2.0).exp());
    let a = Matrix2::new(ea, 0.0, 0.0, 1.0 / ea);
    let twist = Matrix2::new(et, 0.0, 0.0, 1.0 / et);
    Ok(Representation::assemble(a, twist * b0, p))
}

impl Representation {
    fn assemble(a: Matrix2<f64>, b: Matrix2<f64>, source: FNChartPoint) -> Self {
        Representation {
            a_inv: sl2_inverse(&a),
            b_inv: sl2_inverse(&b),
            a,
            b,
            source,
        }
    }

    /// Builds a representation from explicit matrices (both must have unit
    /// determinant). `source` records which chart point they realize.
    pub fn from_matrices(a: Matrix2<f64>, b: Matrix2<f64>, source: FNChartPoint) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b)] {
            let d = m.determinant();
            if (d - 1.0).abs() > 1e-12 * m.norm_squared().max(1.0) {
                return Err(Error::InvalidArgument(format!("det {name} = {d}, expected 1")));
            }
        }
        Ok(Self::assemble(a, b, source))
    }

    /// `M {A, B} M^-1` for `M` in `SL(2, R)`.
    pub fn conjugated(&self, m: &Matrix2<f64>) -> Result<Self> {
        let mi = sl2_inverse(m);
        Self::from_matrices(m * self.a * mi, m * self.b * mi, self.source)
    }

    pub fn a(&self) -> &Matrix2<f64> {
        &self.a
    }

    pub fn b(&self) -> &Matrix2<f64> {
        &self.b
    }

    pub fn source(&self) -> FNChartPoint {
        self.source
    }

    fn letter(&self, l: Letter) -> &Matrix2<f64> {
        match l {
            Letter::U => &self.a,
            Letter::UInv => &self.a_inv,
            Letter::V => &self.b,
            Letter::VInv => &self.b_inv,
        }
    }

    /// Image of a word.
    pub fn word_matrix(&self, w: &Word) -> Matrix2<f64> {
        w.letters()
            .iter()
            .fold(Matrix2::identity(), |acc, &l| acc * self.letter(l))
    }

    pub fn word_trace(&self, w: &Word) -> Result<f64> {
        if w.is_unit() {
            return Err(Error::InvalidArgument("the unit word has no geodesic".into()));
        }
        let t = self.word_matrix(w).trace();
        if !(t.abs() >= 2.0 - PARABOLIC_TOL) {
            return Err(Error::EllipticAnomaly {
                word: w.to_string(),
                trace: t,
            });
        }
        Ok(t)
    }

    /// Translation length of the isometry of `w`, evaluated on the canonical
    /// class representative so that conjugates and inverses agree bitwise.
    pub fn geodesic_length(&self, w: &Word) -> Result<f64> {
        let c = w.canonical_class()?;
        self.word_trace(&c).map(trace_to_length)
    }
}

/// `2 arccosh(|tr|/2)`, zero on the parabolic band.
pub fn trace_to_length(trace: f64) -> f64 {
    let t = trace.abs();
    if t <= 2.0 + PARABOLIC_TOL {
        0.0
    } else {
        2.0 * (t / 2.0).acosh()
    }
}

fn sl2_inverse(m: &Matrix2<f64>) -> Matrix2<f64> {
    Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}
