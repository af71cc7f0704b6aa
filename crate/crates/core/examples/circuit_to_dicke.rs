// From circuit parameters to the Dicke model: derived coefficients, the
// normal-mode spectrum they imply, and an exact-diagonalization check at
// small N.
//
// ```bash
// cargo run --example circuit_to_dicke
// ```

use circuit_dicke::dicke_ed::{auto_cutoff, ground_state, EDConfig};
use circuit_dicke::model::{derive_params, CircuitParams};
use circuit_dicke::phase::critical_coupling;
use circuit_dicke::quadratic::closed_form_spectrum;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // weak Josephson coupling, C_J = C_g: κ ≪ 1 and γ = 1
    let p = CircuitParams::new(1.0, 0.04, 1.0, 1.0, 0.004, 0.04, 16);
    let d = derive_params(&p)?;
    println!(
        "kappa = {}, gamma = {}, omega_J = {}, Omega = {:.5}, D = {:.3e}, F = {}",
        d.kappa, d.gamma, d.omega_j, d.omega_big, d.d_coef, d.f_coef
    );

    let h = d.two_mode(p.omega_r);
    let s = closed_form_spectrum(&h);
    let omega0 = critical_coupling(d.kappa, d.gamma, p.omega_r, d.omega_j);
    println!(
        "w+^2 = {:.4e}, w-^2 = {:.4e} ({}), Omega0 = {omega0:?}",
        s.omega_plus_sq,
        s.omega_minus_sq,
        s.phase.as_str()
    );

    let cfg = EDConfig::from_circuit(&p, auto_cutoff(p.n_atoms, &h))?;
    let r = ground_state(&cfg)?;
    println!(
        "ED at N = {}: E0 = {:.6}, gap = {:.3e}, photons per atom = {:.4}, inversion = {:.4}, cutoff converged = {}",
        p.n_atoms, r.ground_energy, r.gap, r.photon_density, r.inversion, r.cutoff_converged
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
