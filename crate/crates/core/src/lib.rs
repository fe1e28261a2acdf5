//! Complex-valued Hebbian associative memory.
//!
//! Patterns are encoded as unit-norm complex vectors (amplitude, bipolar or
//! sigmoid-phase encodings), stored by summing their outer products into a
//! Hermitian N×N hologram, and recalled in a single pass, either by applying
//! the matrix or by projecting onto the stored patterns. Recognition picks the
//! stored pattern with the largest overlap modulus.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing clocks
//! and the command line live in the `qamnet` crate.

#![no_std]

extern crate alloc;

pub mod bench;
pub mod codec;
pub mod encode;
pub mod error;
pub mod memory;
pub mod rng;
pub mod state;

pub use encode::{
    amplitude_encode, bipolar_encode, decode_phase, pattern_stats, phase_encode, sigmoid_phase_map,
    PatternStats, RawPattern,
};
pub use error::{Error, Result};
pub use memory::{Hologram, OverlapReport, RecallPath, Recognition, DEFAULT_MIN_CONFIDENCE};
pub use num_complex::Complex64;
pub use state::{EncodingKind, StatePattern};
