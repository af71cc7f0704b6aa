//! Numerical laboratory for the circuit-QED Dicke model.
//!
//! The crate follows the chain from microscopic superconducting physics to
//! the superradiant phase transition:
//!
//! - [`bcs`]: explicit fermionic Fock-space checks of the pseudo-spin algebra,
//!   the pair-tunneling Hamiltonian and the Josephson `sin` current law.
//! - [`model`]: circuit parameters, Cooper-pair-box charging energetics and
//!   the reduction to Dicke coefficients (κ, γ, μ, Ω, D, F).
//! - [`quadratic`]: normal modes of the two-mode quadratic Hamiltonian, an
//!   independent matrix oracle, drive elimination and the coupled-oscillator
//!   stability check.
//! - [`dicke_ed`]: finite-N exact diagonalization in the symmetric spin sector
//!   with finite-size scans of the pseudo-critical coupling.
//! - [`phase`]: critical couplings (closed form and bisection) and
//!   phase-diagram sweeps over (κ, γ, Ω).
//! - [`cli`]: the `circuit-dicke` command-line front end and its file formats.
//!
//! All quantities use natural units with ħ = e = 1; energies and frequencies
//! are conventionally measured in units of the resonator frequency ω_r.

pub mod bcs;
pub mod cli;
pub mod dicke_ed;
pub mod error;
pub mod linalg;
pub mod model;
pub mod phase;
pub mod quadratic;

pub use error::{Error, Result};
