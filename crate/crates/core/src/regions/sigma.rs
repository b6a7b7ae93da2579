use std::fmt;

use serde::{Serialize, Serializer};

use crate::charts::FNChartPoint;
use crate::error::{Error, Result};
use crate::exec::{try_map_ordered, Execution};
use crate::fuchsian::{enumerate_classes, fn_to_rep, Representation, Word};

/// A margin below `-MARGIN_TOL` is a violation.
pub const MARGIN_TOL: f64 = 1e-9;

/// Default truncation length for length-spectrum comparisons.
pub const DEFAULT_MAX_WORD_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaStatus {
    /// Dominates the reference on every class up to this length; never a
    /// claim of full membership.
    InUpTo(usize),
    Out,
}

impl SigmaStatus {
    pub fn is_out(self) -> bool {
        self == SigmaStatus::Out
    }
}

impl fmt::Display for SigmaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaStatus::InUpTo(n) => write!(f, "in_up_to_{n}"),
            SigmaStatus::Out => f.write_str("out"),
        }
    }
}

impl Serialize for SigmaStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Margin {
    pub word: Word,
    /// `l(X, w) - l(Y0, w)`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaVerdict {
    pub status: SigmaStatus,
    pub max_word_len: usize,
    /// Shortest (then lexicographically first) violating class.
    pub witness: Option<Word>,
    pub min_margin: f64,
    pub warning: Option<String>,
    pub margins: Vec<Margin>,
}

impl SigmaVerdict {
    pub fn margin_of(&self, w: &Word) -> Option<f64> {
        self.margins.iter().find(|m| &m.word == w).map(|m| m.margin)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Margin> {
        self.margins.iter().filter(|m| m.margin < -MARGIN_TOL)
    }
}

/// The reference surface `Y0` with its truncated length spectrum, reusable
/// across many candidate surfaces.
#[derive(Debug, Clone)]
pub struct SigmaReference {
    y0: FNChartPoint,
    max_len: usize,
    classes: Vec<Word>,
    lengths: Vec<f64>,
}

impl SigmaReference {
    pub fn new(y0: FNChartPoint, max_len: usize, exec: Execution) -> Result<Self> {
        if max_len < 2 {
            return Err(Error::InvalidArgument(format!(
                "maximum word length must be at least 2, got {max_len}"
            )));
        }
        let rep = fn_to_rep(y0)?;
        let classes = enumerate_classes(max_len)?;
        let lengths = try_map_ordered(exec, &classes, |w| rep.geodesic_length(w))?;
        Ok(SigmaReference {
            y0,
            max_len,
            classes,
            lengths,
        })
    }

    pub fn y0(&self) -> FNChartPoint {
        self.y0
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn verdict(&self, x: FNChartPoint, exec: Execution) -> Result<SigmaVerdict> {
        let rep = fn_to_rep(x)?;
        self.verdict_for_rep(&rep, exec)
    }

    pub fn verdict_for_rep(&self, rep: &Representation, exec: Execution) -> Result<SigmaVerdict> {
        let idx: Vec<usize> = (0..self.classes.len()).collect();
        let margins = try_map_ordered(exec, &idx, |&i| {
            let w = &self.classes[i];
            let lx = rep.geodesic_length(w)?;
            Ok(Margin {
                word: w.clone(),
                margin: lx - self.lengths[i],
            })
        })?;
        // classes are sorted by length first, so the first violation is minimal
        let witness = margins.iter().find(|m| m.margin < -MARGIN_TOL).map(|m| m.word.clone());
        let min_margin = margins.iter().map(|m| m.margin).fold(f64::INFINITY, f64::min);
        let warning = (self.max_len < 4).then(|| {
            format!(
                "truncation length {} < 4 leaves the commutator (boundary length) constraint unchecked",
                self.max_len
            )
        });
        Ok(SigmaVerdict {
            status: if witness.is_some() {
                SigmaStatus::Out
            } else {
                SigmaStatus::InUpTo(self.max_len)
            },
            max_word_len: self.max_len,
            witness,
            min_margin,
            warning,
            margins,
        })
    }
}

/// Compares the length spectra of `x` and `y0` on every class of length
/// `<= max_len`.
pub fn sigma_membership(x: FNChartPoint, y0: FNChartPoint, max_len: usize, exec: Execution) -> Result<SigmaVerdict> {
    SigmaReference::new(y0, max_len, exec)?.verdict(x, exec)
}
