//! Global precision profile.
//!
//! All inner quadratures read their relative tolerance from here. The
//! default ("extended") exploits the full double-double word; "double"
//! relaxes to what plain f64 pipelines could deliver, for quick runs.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

static MODE: AtomicU8 = AtomicU8::new(1);

pub fn set_precision(p: Precision) {
    MODE.store(if p == Precision::Double { 0 } else { 1 }, Ordering::Relaxed);
}

pub fn precision() -> Precision {
    if MODE.load(Ordering::Relaxed) == 0 {
        Precision::Double
    } else {
        Precision::Extended
    }
}

/// Relative tolerance for adaptive quadrature.
pub fn quad_tol() -> f64 {
    match precision() {
        Precision::Double => 1e-13,
        Precision::Extended => 1e-24,
    }
}

/// Threshold below which a would-be pole residue counts as zero.
pub fn residue_floor() -> f64 {
    match precision() {
        Precision::Double => 1e-10,
        Precision::Extended => 1e-20,
    }
}
