//! Extremal and hyperbolic lengths: exact identities on annuli and a
//! numerical conformal-modulus solver on slit tori.

mod annulus;
mod richardson;
mod solver;

pub use annulus::{annulus_from_core_length, annulus_quantities, Annulus};
pub use richardson::{refine_and_extrapolate, Extrapolation};
pub use solver::{
    discrete_extremal_length, estimate_extremal_length, lambda_triple_slit, slit_torus_extremal_length, CurveClass,
    Level, ModulusEstimate, RefinementPlan, TripleEstimate, MAX_GRID, MIN_GRID,
};
