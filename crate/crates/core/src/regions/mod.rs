//! Handle-condition regions around a reference surface `Y0`: truncated
//! length-spectrum dominance, critical extremal lengths and their strips,
//! handle covers, slice scans, and the corner certificate at `Y0`.

mod corner;
mod critical;
mod scan;
mod sigma;

pub use corner::{corner_certificate, CornerReport, ProbeDirection, ProbeResult};
pub use critical::{
    critical_lengths, handle_cover, lambda_chain_check, strip_report, ChainCheck, Critical, CriticalLengths,
    CriticalLine, StripEntry,
};
pub use scan::{scan_sigma_slice, AxisRange, Plane, ScanCell, ScanGrid, MAX_SCAN_WORK};
pub use sigma::{
    sigma_membership, Margin, SigmaReference, SigmaStatus, SigmaVerdict, DEFAULT_MAX_WORD_LEN, MARGIN_TOL,
};
