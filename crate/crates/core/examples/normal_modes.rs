// Normal modes of the two-mode quadratic Hamiltonian: the closed-form
// frequencies against the quadrature-matrix oracle, elimination of the
// linear drive, and the coupled-oscillator stability check.
//
// ```bash
// cargo run --example normal_modes
// ```

use circuit_dicke::quadratic::{
    cho_no_go_check, closed_form_spectrum, eliminate_linear, numeric_spectrum, Coupling, Oscillator, TwoModeQuadratic,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>14} {:>14} {:>14} {:>13}", "Omega", "w+^2", "w-^2", "w-^2 (oracle)", "phase");
    for k in 0..=8 {
        let omega = 0.1 * k as f64;
        let h = TwoModeQuadratic::new(1.0, 1.0, omega, 0.0, 0.0);
        let s = closed_form_spectrum(&h);
        let o = numeric_spectrum(&h);
        println!(
            "{omega:>6.2} {:>14.10} {:>14.10} {:>14.10} {:>13}",
            s.omega_plus_sq,
            s.omega_minus_sq,
            o.omega_minus_sq,
            s.phase.as_str()
        );
    }

    let driven = TwoModeQuadratic::new(1.0, 0.8, 0.3, 0.05, 0.2);
    let e = eliminate_linear(&driven)?;
    println!(
        "drive F = 0.2 displaced by eta = {:.6}, xi = {:.6}i, energy shift {:.6}",
        e.displacement.eta.re, e.displacement.xi.im, e.energy_shift
    );

    let o1 = Oscillator { mass: 1.0, omega: 1.0 };
    let o2 = Oscillator { mass: 2.0, omega: 0.5 };
    for g in [0.1, 1.0, 10.0] {
        let natural = cho_no_go_check(o1, o2, g, Coupling::Natural)?;
        let bare = cho_no_go_check(o1, o2, g, Coupling::Bare)?;
        println!("g = {g:>5}: natural stable = {}, bare stable = {}", natural.stable, bare.stable);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
