// Cooper-pair-box charging energetics: the electrostatic energy U, the
// tunneling work W and the charging Hamiltonian over a sweep of gate charge.
//
// ```bash
// cargo run --example charging_energetics
// ```

use circuit_dicke::model::{
    charging_hamiltonian_value, electrostatic_energy, tunneling_work, ChargingConvention, CircuitParams,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // E_C = 1, E_J = 0.2, C_g = 1, C_J = 4 (γ = 4), V_q = 0.05, ω_r = 1, N = 1
    let p = CircuitParams::new(1.0, 0.2, 1.0, 4.0, 0.05, 1.0, 1);
    p.validate()?;
    println!("gamma = {}, mu = {}", p.gamma(), p.mu());
    println!("{:>6} {:>6} {:>10} {:>10} {:>10} {:>10}", "n_g", "s_z", "U", "W", "H_C", "U+W+2E_C s");
    for n_g in [0.0, 0.25, 0.5, 0.75] {
        for s_z in [-0.5, 0.5] {
            let u = electrostatic_energy(n_g, &p);
            let w = tunneling_work(s_z, n_g, &p);
            let h = charging_hamiltonian_value(s_z, n_g, &p, ChargingConvention::Shifted);
            let sum = u + w + 2.0 * p.e_c * s_z;
            println!("{n_g:>6.2} {s_z:>6.1} {u:>10.4} {w:>10.4} {h:>10.4} {sum:>10.4}");
            if (sum - h).abs() > 1e-12 * h.abs().max(1.0) {
                return Err(format!("charging identity broken at n_g = {n_g}, s_z = {s_z}").into());
            }
        }
    }

    // at the degeneracy point both charge states cost the same
    let lo = charging_hamiltonian_value(-0.5, 0.5, &p, ChargingConvention::Shifted);
    let hi = charging_hamiltonian_value(0.5, 0.5, &p, ChargingConvention::Shifted);
    println!("degeneracy point: H_C(-1/2) = {lo}, H_C(+1/2) = {hi}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
