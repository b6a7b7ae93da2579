//! Reduced words in the free group on `u`, `v`, and canonical
//! representatives of their conjugacy-and-inversion classes.
//!
//! Letters are ordered `u < U < v < V` (capital letters are inverses);
//! canonical forms are lexicographically minimal under this order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest word length [`enumerate_classes`] accepts.
pub const MAX_ENUMERATION_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U,
    UInv,
    V,
    VInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::U, Letter::UInv, Letter::V, Letter::VInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::U => Letter::UInv,
            Letter::UInv => Letter::U,
            Letter::V => Letter::VInv,
            Letter::VInv => Letter::V,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::U => 'u',
            Letter::UInv => 'U',
            Letter::V => 'v',
            Letter::VInv => 'V',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'u' => Letter::U,
            'U' => Letter::UInv,
            'v' => Letter::V,
            'V' => Letter::VInv,
            _ => return None,
        })
    }
}

/// A freely reduced word. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

/// Freely reduces a letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for x in letters {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word(out)
}

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Same as [`Word::is_unit`].
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn u() -> Word {
        Word(vec![Letter::U])
    }

    pub fn v() -> Word {
        Word(vec![Letter::V])
    }

    /// `u v u^-1 v^-1`, the class of the boundary loop.
    pub fn commutator() -> Word {
        Word(vec![Letter::U, Letter::V, Letter::UInv, Letter::VInv])
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: usize) -> Word {
        reduce(std::iter::repeat_n(self.0.iter().copied(), n).flatten())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => self.0.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Strips conjugating prefix/suffix pairs.
    pub fn cyclic_reduction(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Minimal representative over cyclic rotations of the word and of its
    /// inverse. Lengths of closed geodesics depend only on this class.
    pub fn canonical_class(&self) -> Result<Word> {
        if self.is_unit() {
            return Err(Error::InvalidArgument("the unit word has no conjugacy class".into()));
        }
        let w = self.cyclic_reduction();
        let inv = w.inverse();
        let n = w.len();
        let mut best: Option<Vec<Letter>> = None;
        for base in [&w.0, &inv.0] {
            for r in 0..n {
                let cand = base[r..].iter().chain(&base[..r]);
                let better = match &best {
                    None => true,
                    Some(b) => cand.clone().lt(b.iter()),
                };
                if better {
                    best = Some(cand.copied().collect());
                }
            }
        }
        Ok(Word(best.unwrap()))
    }

    pub fn is_canonical(&self) -> bool {
        !self.is_unit() && self.canonical_class().map(|c| &c == self).unwrap_or(false)
    }

    /// Image under the Dehn twist `u -> u`, `v -> v u`.
    pub fn twist_substitute(&self) -> Word {
        reduce(self.0.iter().flat_map(|&l| match l {
            Letter::U | Letter::UInv => vec![l],
            Letter::V => vec![Letter::V, Letter::U],
            Letter::VInv => vec![Letter::UInv, Letter::VInv],
        }))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        reduce(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `u`, `U`, `v`, `V` strings; `""` and `"1"` are the unit. The
    /// result is freely reduced.
    fn from_str(s: &str) -> Result<Word> {
        if s == "1" {
            return Ok(Word::unit());
        }
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::InvalidArgument(format!("bad letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(reduce(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All canonical classes of cyclically reduced length `1..=max_len`, sorted
/// by length and then lexicographically.
pub fn enumerate_classes(max_len: usize) -> Result<Vec<Word>> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("maximum word length must be at least 1".into()));
    }
    if max_len > MAX_ENUMERATION_LEN {
        return Err(Error::ResourceLimit(format!(
            "word length {max_len} exceeds the cap of {MAX_ENUMERATION_LEN}"
        )));
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(max_len);
    for n in 1..=max_len {
        extend_canonical(&mut buf, n, &mut out);
    }
    Ok(out)
}

// Depth-first in letter order, so each length comes out already sorted.
fn extend_canonical(buf: &mut Vec<Letter>, n: usize, out: &mut Vec<Word>) {
    if buf.len() == n {
        let w = Word(buf.clone());
        if w.is_cyclically_reduced() && w.is_canonical() {
            out.push(w);
        }
        return;
    }
    for l in Letter::ALL {
        if buf.last() == Some(&l.inverse()) {
            continue;
        }
        // A canonical word starts with its smallest letter.
        if let Some(&first) = buf.first() {
            if l < first {
                continue;
            }
        }
        buf.push(l);
        extend_canonical(buf, n, out);
        buf.pop();
    }
}
