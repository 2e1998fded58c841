//! Ground states of the fractional equation
//!
//! ```text
//! (-Δ)^s Q + λ Q - Q^(α+1) = 0   on ℝ,  0 < s ≤ 1
//! ```
//!
//! discretized on a periodic Fourier grid. The crate solves for the positive
//! ground state, certifies its linearization (Morse index, kernel, Perron
//! property, coercivity), continues solutions in `s` towards the classical
//! limit `s → 1`, tabulates the fractional heat and resolvent kernels, and
//! evaluates the harmonic extension to the upper half-plane.
//!
//! Most users start from [`groundstate::solve_ground_state`]; the runnable
//! programs in `examples/` walk through each capability.

pub mod commands;
pub mod continuation;
pub mod error;
pub mod extension;
pub mod groundstate;
pub mod io;
pub mod kernels;
pub mod linearization;
pub mod quadrature;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use groundstate::{solve_ground_state, GroundStateSolution, ModelParams, SolverOptions};
pub use spectral::{Field, Grid, Parity, SymbolSpec};
