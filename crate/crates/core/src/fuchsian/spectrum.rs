use serde::Serialize;

use super::rep::Representation;
use super::word::{enumerate_classes, Word};
use crate::error::Result;
use crate::exec::{try_map_ordered, Execution};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub word: Word,
    pub trace: f64,
    pub length: f64,
}

/// Lengths of every class of cyclically reduced length `<= max_len`, ordered
/// by length and then by word.
pub fn length_spectrum(rep: &Representation, max_len: usize, exec: Execution) -> Result<Vec<SpectrumEntry>> {
    let classes = enumerate_classes(max_len)?;
    let mut entries = try_map_ordered(exec, &classes, |w| {
        let trace = rep.word_trace(w)?;
        Ok(SpectrumEntry {
            word: w.clone(),
            trace,
            length: super::rep::trace_to_length(trace),
        })
    })?;
    entries.sort_by(|p, q| p.length.total_cmp(&q.length).then_with(|| p.word.cmp(&q.word)));
    Ok(entries)
}

/// CSV with columns `word,trace,length`, floats at 17 significant digits.
pub fn spectrum_csv(entries: &[SpectrumEntry]) -> String {
    let mut out = String::from("word,trace,length\n");
    for e in entries {
        out.push_str(&format!("{},{:.16e},{:.16e}\n", e.word, e.trace, e.length));
    }
    out
}
