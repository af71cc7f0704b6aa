// Critical couplings and phase diagrams over (κ, γ): the closed form
// against bisection, the two experimental regimes, and a small grid
// printed as a character map.
//
// ```bash
// cargo run --example phase_diagram
// ```

use circuit_dicke::phase::{
    critical_coupling, critical_coupling_numeric, sweep, OmegaAxis, PointPhase, Range, SweepMode, SweepSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (kappa, gamma) in [(0.0, 1.0), (0.01, 1.0), (0.5, 1.5), (0.4, 10.0)] {
        let exact = critical_coupling(kappa, gamma, 1.0, 1.0);
        let numeric = critical_coupling_numeric(kappa, gamma, 1.0, 1.0)?;
        println!("kappa = {kappa:<5} gamma = {gamma:<5} Omega0 = {exact:?} (bisection {numeric:?})");
    }

    let spec = SweepSpec {
        kappa: Range::new(0.0, 1.0, 11),
        gamma: Range::new(0.0, 2.0, 21),
        omega_big: OmegaAxis::Fixed(1.0),
        omega_r: 1.0,
        omega_j: 1.0,
        mode: SweepMode::FixedOmega,
        untied_d: None,
    };
    let points = sweep(&spec, None)?;
    println!("phase map at Omega = 1 (rows kappa 0..1, columns gamma 0..2; S superradiant, . normal)");
    for row in points.chunks(spec.gamma.steps) {
        let line: String = row
            .iter()
            .map(|p| match p.phase {
                PointPhase::Superradiant => 'S',
                PointPhase::Critical => '|',
                _ => '.',
            })
            .collect();
        println!("  kappa = {:.1}  {line}", row[0].kappa);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
