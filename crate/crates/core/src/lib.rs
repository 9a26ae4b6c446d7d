//! Composite-level modular curves over Q: exact j-map models, finite-field
//! zeta data, Mordell–Weil sieving and entanglement checks.

pub mod entangle;
pub mod exact;
pub mod ffcurves;
pub mod fixtures;
pub mod gl2cat;
pub mod models;
pub mod par;
pub mod ratpoints;
pub mod sieve;
