//! Harmonic analysis on small compact Lie groups.
//!
//! The crate works on the circle `T^1`, the torus `T^2` and `SU(2)`. It
//! provides weight functions and their Young conjugates, the group Fourier
//! transform on a truncated unitary dual, Laplace-Beltrami iterate seminorms,
//! decay-based regularity diagnostics, and explicit strong factorization of
//! band-limited functions and representation vectors through convolution.
//!
//! Everything here is allocation-only and free of IO; file formats and the
//! command-line driver live in the `peterweyl-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod factorize;
pub mod fourier;
pub mod group;
pub mod linalg;
pub mod samples;
pub mod spectral;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
