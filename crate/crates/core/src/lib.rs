//! Computations on the space of marked once-holed tori.
//!
//! * [`charts`]: the slit chart `(tau, s)`, the Fenchel-Nielsen chart
//!   `(l, l', theta)` and the extremal-length chart with its region `L`.
//! * [`fuchsian`]: free-group words, `SL(2, R)` representations and length
//!   spectra.
//! * [`extremal`]: annulus identities and the slit-torus modulus solver.
//! * [`regions`]: dominance regions, critical extremal lengths, scans and
//!   corner certificates.
//!
//! Data-parallel loops honour an [`Execution`] policy; with the default
//! `parallel` feature they run on rayon, otherwise sequentially. Outputs are
//! identical either way.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charts;
pub mod descriptor;
mod error;
mod exec;
pub mod extremal;
pub mod fuchsian;
pub mod regions;

pub use descriptor::{validate_descriptor, Fixture, FixtureKind, SurfaceDescriptor, ValidDescriptor};
pub use error::{Error, Result};
pub use exec::{map_ordered, try_map_ordered, Execution};
pub use num_complex::Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
