//! Squared-oscillator perturbation theory for the quartic anharmonic oscillator
//! `H = p²/2 + m²q²/2 + M³q⁴/4`.
//!
//! * [`model`]: the dimensionless coupling `g = (m/M)²` and the shorthand `X`.
//! * [`hs_terms`]: `E⁽⁰⁾..E⁽³⁾`, the first-order norm and the resummed
//!   expectation values as functions of the regulator `Z`.
//! * [`scale_select`]: FAC, PMS and the perturbative-variational choice of `Z`.
//! * [`rs_series`]: the weak-coupling Rayleigh-Schrödinger series.
//! * [`exact`]: reference eigenvalues from basis diagonalization.
//! * [`ladder_sum`]: brute-force perturbation sums used to validate the
//!   closed-form terms.
//! * [`acceptance`]: the end-to-end checks behind `hsosc report`.

pub mod acceptance;
pub mod dual;
pub mod error;
pub mod exact;
pub mod hs_terms;
pub mod ladder_sum;
pub mod model;
pub mod roots;
pub mod rs_series;
pub mod scale_select;

pub use error::{Error, Result};
pub use model::{lambda_of, x_of, Coupling, Level, OscillatorModel};
