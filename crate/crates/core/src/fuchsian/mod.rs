//! The Fenchel-Nielsen chart realized by representations of the free group
//! `<u, v>` into `SL(2, R)`, and hyperbolic length spectra.

mod rep;
mod spectrum;
mod word;

pub use rep::{fn_to_rep, trace_to_length, Representation, PARABOLIC_TOL};
pub use spectrum::{length_spectrum, spectrum_csv, SpectrumEntry};
pub use word::{enumerate_classes, reduce, Letter, Word, MAX_ENUMERATION_LEN};
