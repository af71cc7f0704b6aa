// Exact diagonalization of the N-atom Dicke Hamiltonian and the drift of
// the pseudo-critical coupling Ω_c(N) toward the thermodynamic value 0.5.
//
// ```bash
// cargo run --release --example finite_size_scaling
// ```

use circuit_dicke::dicke_ed::{scaling_scan, CouplingModel, ScanOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = CouplingModel { kappa: 0.0, gamma: 1.0, omega_r: 1.0, omega_j: 1.0 };
    let grid: Vec<f64> = (0..=30).map(|k| 0.3 + 0.02 * k as f64).collect();
    let table = scaling_scan(&[2, 4, 8], &grid, &model, &ScanOptions::default())?;

    for est in &table.estimates {
        println!(
            "N = {:>2}: Omega_c = {:.2}, gap there = {:.4}{}",
            est.n_atoms,
            est.omega_c,
            est.gap,
            if est.at_grid_edge { " (grid edge)" } else { "" }
        );
    }
    let last = table.points.iter().rev().find(|p| p.n_atoms == 8).expect("N = 8 rows");
    println!(
        "N = 8 at Omega = {:.2}: photon density {:.4}, inversion {:.4}, cutoff {} converged = {}",
        last.omega_big, last.result.photon_density, last.result.inversion, last.photon_cutoff, last.result.cutoff_converged
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
