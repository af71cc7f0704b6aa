//! Circuit parameters, Cooper-pair-box charging energetics and the reduction
//! to the coefficients of the two-mode Dicke Hamiltonian.
//!
//! Units: ħ = e = 1. Capacitances and the quantum-voltage amplitude enter only
//! through the products that define Ω, D and F, so any consistent choice of
//! scale works. To start from SI values, express every energy in units of
//! ħω_r, take capacitances in units of e²/(ħω_r) and the voltage amplitude in
//! units of ħω_r/e; the formulas below then hold unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::quadratic::TwoModeQuadratic;

/// Gate charge at the charge-degeneracy point, where the box reduces to a qubit.
pub const DEGENERACY_GATE_CHARGE: f64 = 0.5;

/// Raw physical inputs describing an array of identical Cooper-pair boxes
/// capacitively coupled to one resonator mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    /// Charging energy E_C.
    pub e_c: f64,
    /// Josephson energy E_J.
    pub e_j: f64,
    /// Gate capacitance C_g.
    pub c_g: f64,
    /// Junction capacitance C_J.
    pub c_j: f64,
    /// Quantized resonator voltage amplitude V_q.
    pub v_q: f64,
    /// Resonator angular frequency ω_r.
    pub omega_r: f64,
    /// Number of junctions N.
    pub n_atoms: usize,
    /// Classical gate charge n_g = C_g V_g / 2e.
    #[serde(default = "default_gate_charge")]
    pub n_g: f64,
}

fn default_gate_charge() -> f64 {
    DEGENERACY_GATE_CHARGE
}

impl CircuitParams {
    /// Builds parameters at the degeneracy point `n_g = 1/2`.
    pub fn new(e_c: f64, e_j: f64, c_g: f64, c_j: f64, v_q: f64, omega_r: f64, n_atoms: usize) -> Self {
        CircuitParams { e_c, e_j, c_g, c_j, v_q, omega_r, n_atoms, n_g: DEGENERACY_GATE_CHARGE }
    }

    pub fn with_gate_charge(mut self, n_g: f64) -> Self {
        self.n_g = n_g;
        self
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("e_c", self.e_c)?;
        require_non_negative("e_j", self.e_j)?;
        require_positive("c_g", self.c_g)?;
        require_positive("c_j", self.c_j)?;
        require_finite("v_q", self.v_q)?;
        require_positive("omega_r", self.omega_r)?;
        require_finite("n_g", self.n_g)?;
        if self.n_atoms == 0 {
            return Err(Error::validation("n_atoms", "must be at least 1"));
        }
        Ok(())
    }

    /// Capacitance ratio γ = C_J / C_g.
    pub fn gamma(&self) -> f64 {
        self.c_j / self.c_g
    }

    /// μ = 4 E_C (γ − 1), the coefficient of the classical n_g² term.
    pub fn mu(&self) -> f64 {
        4.0 * self.e_c * (self.gamma() - 1.0)
    }
}

/// Coefficients of the reduced model, computed from [`CircuitParams`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// κ = E_J / 4E_C.
    pub kappa: f64,
    /// γ = C_J / C_g.
    pub gamma: f64,
    /// μ = 4 E_C (γ − 1).
    pub mu: f64,
    /// ω_J = E_J.
    pub omega_j: f64,
    /// Collective coupling Ω = 2√N E_C C_g V_q.
    pub omega_big: f64,
    /// Two-photon coefficient D = N E_C C_J C_g V_q².
    pub d_coef: f64,
    /// Linear drive F = μ N C_g V_q / 2.
    pub f_coef: f64,
}

impl DerivedParams {
    /// The two-mode quadratic Hamiltonian these coefficients define at
    /// resonator frequency `omega_r`.
    pub fn two_mode(&self, omega_r: f64) -> TwoModeQuadratic {
        TwoModeQuadratic {
            omega_r,
            omega_j: self.omega_j,
            omega_big: self.omega_big,
            d_coef: self.d_coef,
            f_coef: self.f_coef,
        }
    }

    pub fn kappa_gamma(&self) -> f64 {
        self.kappa * self.gamma
    }
}

/// Computes every reduced coefficient from its defining formula.
pub fn derive_params(p: &CircuitParams) -> Result<DerivedParams> {
    p.validate()?;
    let n = p.n_atoms as f64;
    let gamma = p.gamma();
    let mu = p.mu();
    Ok(DerivedParams {
        kappa: p.e_j / (4.0 * p.e_c),
        gamma,
        mu,
        omega_j: p.e_j,
        omega_big: 2.0 * n.sqrt() * p.e_c * p.c_g * p.v_q,
        d_coef: n * p.e_c * p.c_j * p.c_g * p.v_q * p.v_q,
        f_coef: mu * n * p.c_g * p.v_q / 2.0,
    })
}

/// Electrostatic energy of the neutral box, U = 4 E_C n_g² γ.
pub fn electrostatic_energy(n_g: f64, p: &CircuitParams) -> f64 {
    4.0 * p.e_c * n_g * n_g * p.gamma()
}

/// Work done moving `s_z` excess pairs onto the island,
/// W = 4E_C S_z² − 8E_C n_g S_z − 2E_C S_z.
pub fn tunneling_work(s_z: f64, n_g: f64, p: &CircuitParams) -> f64 {
    let e_c = p.e_c;
    4.0 * e_c * s_z * s_z - 8.0 * e_c * n_g * s_z - 2.0 * e_c * s_z
}

/// Which form of the charging Hamiltonian to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChargingConvention {
    /// H_C = 4E_C (S_z − n_g)² + μ n_g², with the linear 2E_C S_z term absorbed
    /// into a shift of the gate charge.
    #[default]
    Shifted,
    /// H_C = U + W exactly, i.e. the shifted form minus 2E_C S_z.
    Exact,
}

/// Charging Hamiltonian eigenvalue for excess-pair number `s_z`.
///
/// With [`ChargingConvention::Shifted`] this equals
/// `electrostatic_energy + tunneling_work + 2 E_C s_z`; with
/// [`ChargingConvention::Exact`] it equals `electrostatic_energy + tunneling_work`.
pub fn charging_hamiltonian_value(s_z: f64, n_g: f64, p: &CircuitParams, convention: ChargingConvention) -> f64 {
    let shifted = 4.0 * p.e_c * (s_z - n_g).powi(2) + p.mu() * n_g * n_g;
    match convention {
        ChargingConvention::Shifted => shifted,
        ChargingConvention::Exact => shifted - 2.0 * p.e_c * s_z,
    }
}

/// Constant energy offset of the N-junction Hamiltonian at the degeneracy
/// point: N·E_C, plus (optionally) the classical c-number N·μ·n_g² that is
/// normally dropped.
pub fn dicke_energy_offset(p: &CircuitParams, include_c_number: bool) -> f64 {
    let n = p.n_atoms as f64;
    let mut offset = n * p.e_c;
    if include_c_number {
        offset += n * p.mu() * p.n_g * p.n_g;
    }
    offset
}
