//! Numerical laboratory for the squeezed Berry–Keating construction.
//!
//! The crate evaluates the wave-function objects of a two-dimensional
//! Hamiltonian built from the dilation generator `(xp + px)/2` and the
//! half-line number operator, and checks that the boundary value of the
//! confined wave function vanishes exactly at the nontrivial zeros of the
//! Riemann zeta function on the critical line.
//!
//! Modules, bottom-up:
//!
//! * [`specfun`]: complex Gamma, Laguerre functions, `I0`, Dirichlet eta,
//!   zeta and the auxiliary first-order coefficient `xi_aux`.
//! * [`quad`]: Gauss–Legendre panel quadrature on the half-line with a
//!   logarithmic substitution for `u^(s-1)` endpoint behaviour.
//! * [`waveform`]: squeeze action, overlaps, Mehler kernel, the position
//!   space wave function and its boundary values.
//! * [`spectra`]: critical-line zero scans and squeezing-parameter
//!   convergence studies.
//! * [`oracles`]: slow, independent reference computations.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod oracles;
pub mod quad;
pub mod spectra;
pub mod specfun;
pub mod waveform;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use specfun::{SpectralParameter, TruncationPolicy};
