//! Normal modes of the two-mode quadratic Hamiltonian
//!
//! ```text
//! H = ω_r a†a + ω_J b†b − iΩ (a† + a)(b† − b) + D (a† + a)² + F (a† + a)
//! ```
//!
//! The closed-form squared frequencies are checked against an independent
//! route: after the canonical rotation `b = i b'` the coupling becomes
//! `−2Ω x_a x_b'`, so in quadrature variables `H = ½ pᵀ T p + ½ xᵀ V x + ...`
//! with `T = diag(ω_r, ω_J)` and `V = [[ω_r + 4D, −2Ω], [−2Ω, ω_J]]`, and the
//! squared normal-mode frequencies are the eigenvalues of `T^{1/2} V T^{1/2}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::linalg::jacobi_eigen;

/// Band around ω_−² = 0 (in units of ω_r²) classified as critical.
pub const CRITICAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoModeQuadratic {
    pub omega_r: f64,
    pub omega_j: f64,
    /// Coupling Ω.
    pub omega_big: f64,
    /// Two-photon coefficient D.
    pub d_coef: f64,
    /// Linear photon drive F.
    pub f_coef: f64,
}

impl TwoModeQuadratic {
    pub fn new(omega_r: f64, omega_j: f64, omega_big: f64, d_coef: f64, f_coef: f64) -> Self {
        TwoModeQuadratic { omega_r, omega_j, omega_big, d_coef, f_coef }
    }

    /// Model with D tied to the coupling, `D = κγ Ω² / ω_J`, and no drive.
    pub fn tied(omega_r: f64, omega_j: f64, omega_big: f64, kappa_gamma: f64) -> Self {
        let d_coef = kappa_gamma * omega_big * omega_big / omega_j;
        TwoModeQuadratic { omega_r, omega_j, omega_big, d_coef, f_coef: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("omega_r", self.omega_r)?;
        require_non_negative("omega_j", self.omega_j)?;
        require_non_negative("d_coef", self.d_coef)?;
        if !self.omega_big.is_finite() {
            return Err(Error::validation("omega_big", "must be finite"));
        }
        if !self.f_coef.is_finite() {
            return Err(Error::validation("f_coef", "must be finite"));
        }
        Ok(())
    }

    /// Same Hamiltonian after the linear drive has been displaced away.
    pub fn without_drive(&self) -> Self {
        TwoModeQuadratic { f_coef: 0.0, ..*self }
    }

    fn potential_matrix(&self) -> [f64; 4] {
        let off = -2.0 * self.omega_big;
        [self.omega_r + 4.0 * self.d_coef, off, off, self.omega_j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    Normal,
    Critical,
    Superradiant,
}

impl Phase {
    pub fn classify(omega_minus_sq: f64) -> Phase {
        if omega_minus_sq < -CRITICAL_TOL {
            Phase::Superradiant
        } else if omega_minus_sq.abs() <= CRITICAL_TOL {
            Phase::Critical
        } else {
            Phase::Normal
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Normal => "normal",
            Phase::Critical => "critical",
            Phase::Superradiant => "superradiant",
        }
    }
}

/// Coherent amplitudes `⟨a⟩ = η`, `⟨b⟩ = ξ` of the displaced ground state,
/// so that `a = α + η`, `b = β + ξ` removes every linear term. η is real and
/// ξ purely imaginary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Displacement {
    pub eta: Complex64,
    pub xi: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    pub omega_plus_sq: f64,
    /// Negative inside the superradiant region.
    pub omega_minus_sq: f64,
    pub phase: Phase,
    /// Present only in the normal phase.
    pub displacement: Option<Displacement>,
}

impl Spectrum {
    fn assemble(h: &TwoModeQuadratic, omega_plus_sq: f64, omega_minus_sq: f64) -> Spectrum {
        let phase = Phase::classify(omega_minus_sq);
        let displacement = match phase {
            Phase::Normal => Some(displace(h).displacement),
            _ => None,
        };
        Spectrum { omega_plus_sq, omega_minus_sq, phase, displacement }
    }
}

/// Squared normal-mode frequencies
/// `ω_±² = ½ [Ω_+² ± √(Ω_−⁴ + 16 Ω² ω_r ω_J)]`,
/// `Ω_±² = ω_r² + 4Dω_r ± ω_J²`.
///
/// Ω_−⁴ is evaluated as `(ω_r² + 4Dω_r − ω_J²)²` so it stays real for any
/// sign of Ω_−². ω_−² is taken from the product of the roots,
/// `ω_+² ω_−² = ω_r ω_J [ω_J (ω_r + 4D) − 4Ω²]`, which equals the difference
/// form exactly but keeps full relative accuracy when ω_−² is near zero.
pub fn closed_form_spectrum(h: &TwoModeQuadratic) -> Spectrum {
    let (plus, minus) = closed_form_pair(h);
    Spectrum::assemble(h, plus, minus)
}

pub(crate) fn closed_form_pair(h: &TwoModeQuadratic) -> (f64, f64) {
    let (wr, wj, om, d) = (h.omega_r, h.omega_j, h.omega_big, h.d_coef);
    let big_plus_sq = wr * wr + 4.0 * d * wr + wj * wj;
    let big_minus_sq = wr * wr + 4.0 * d * wr - wj * wj;
    let root = (big_minus_sq * big_minus_sq + 16.0 * om * om * wr * wj).sqrt();
    let plus = 0.5 * (big_plus_sq + root);
    let product = wr * wj * (wj * (wr + 4.0 * d) - 4.0 * om * om);
    let minus = if plus > 0.0 { product / plus } else { 0.5 * (big_plus_sq - root) };
    (plus, minus)
}

/// Independent oracle: eigenvalues of `T^{1/2} V T^{1/2}` by Jacobi rotation.
pub fn numeric_spectrum(h: &TwoModeQuadratic) -> Spectrum {
    let v = h.potential_matrix();
    let t = [h.omega_r.sqrt(), h.omega_j.sqrt()];
    let mut m = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            m[i * 2 + j] = t[i] * v[i * 2 + j] * t[j];
        }
    }
    let eig = jacobi_eigen(&m, 2).expect("2×2 Jacobi always converges");
    Spectrum::assemble(h, eig.values[1], eig.values[0])
}

/// Result of removing the linear drive by a c-number displacement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearElimination {
    pub displacement: Displacement,
    /// Constant added to the Hamiltonian by the displacement.
    pub energy_shift: f64,
}

/// Displacement minimizing the classical energy `½ xᵀ V x + vᵀ x` with
/// `v = (√2 F, 0)`; fails unless the quadratic form is positive definite.
pub fn eliminate_linear(h: &TwoModeQuadratic) -> Result<LinearElimination> {
    let (_, minus) = closed_form_pair(h);
    if Phase::classify(minus) != Phase::Normal {
        return Err(Error::SingularForm { omega_minus_sq: minus });
    }
    Ok(displace(h))
}

fn displace(h: &TwoModeQuadratic) -> LinearElimination {
    let [v00, v01, v10, v11] = h.potential_matrix();
    let det = v00 * v11 - v01 * v10;
    let drive = std::f64::consts::SQRT_2 * h.f_coef;
    // x0 = −V⁻¹ (drive, 0)
    let x_a = -v11 * drive / det;
    let x_b = v10 * drive / det;
    // ⟨a⟩ = x_a/√2; ⟨b'⟩ = x_b/√2 with b = i b'
    let eta = Complex64::new(x_a / std::f64::consts::SQRT_2, 0.0);
    let xi = Complex64::new(0.0, x_b / std::f64::consts::SQRT_2);
    LinearElimination { displacement: Displacement { eta, xi }, energy_shift: 0.5 * drive * x_a }
}

/// How the two oscillators of a coupled-oscillator model are coupled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// `g (x₁ − x₂)² / 2`, which renormalizes `ω̃_i² = ω_i² + g/m_i`.
    Natural,
    /// Bare `−g x₁ x₂` with no renormalization.
    Bare,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillator {
    pub mass: f64,
    pub omega: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// `m₁ m₂ ω̃₁² ω̃₂² − g²`
    pub margin: f64,
}

/// Stability of two coupled harmonic oscillators: real normal modes iff
/// `g² < m₁ m₂ ω̃₁² ω̃₂²`.
pub fn cho_no_go_check(o1: Oscillator, o2: Oscillator, g: f64, coupling: Coupling) -> Result<Stability> {
    require_positive("m1", o1.mass)?;
    require_positive("m2", o2.mass)?;
    require_positive("w1", o1.omega)?;
    require_positive("w2", o2.omega)?;
    if !g.is_finite() {
        return Err(Error::validation("g", "must be finite"));
    }
    let (w1_sq, w2_sq) = match coupling {
        Coupling::Natural => (o1.omega.powi(2) + g / o1.mass, o2.omega.powi(2) + g / o2.mass),
        Coupling::Bare => (o1.omega.powi(2), o2.omega.powi(2)),
    };
    let margin = o1.mass * o2.mass * w1_sq * w2_sq - g * g;
    Ok(Stability { stable: margin > 0.0, margin })
}
