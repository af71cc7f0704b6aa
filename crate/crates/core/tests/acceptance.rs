//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one `PASS`/`FAIL` line; exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use circuit_dicke::bcs::verify_suite;
use circuit_dicke::dicke_ed::{auto_cutoff, ground_state, scaling_scan, CouplingModel, EDConfig, ScanOptions};
use circuit_dicke::model::{charging_hamiltonian_value, electrostatic_energy, tunneling_work, ChargingConvention, CircuitParams};
use circuit_dicke::phase::{critical_coupling, critical_coupling_numeric, tied_omega_minus_sq};
use circuit_dicke::quadratic::{
    closed_form_spectrum, cho_no_go_check, numeric_spectrum, Coupling, Oscillator, Phase, TwoModeQuadratic,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn agree(a: f64, b: f64) -> bool {
    let d = (a - b).abs();
    d <= 1e-10 * a.abs().max(b.abs()) || d <= 1e-12
}

fn spectrum_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = [0usize; 3];
    let mut failures = 0;
    for i in 0..1200 {
        let omega_r: f64 = rng.random_range(0.1..3.0);
        let omega_j: f64 = rng.random_range(0.1..3.0);
        let d_coef: f64 = rng.random_range(0.0..2.0);
        // every fifth draw sits on the instability line 4Ω² = ω_J(ω_r + 4D)
        let omega_big = if i % 5 == 0 {
            0.5 * (omega_j * (omega_r + 4.0 * d_coef)).sqrt()
        } else {
            rng.random_range(-3.0..3.0)
        };
        let h = TwoModeQuadratic::new(omega_r, omega_j, omega_big, d_coef, rng.random_range(-1.0..1.0));
        let a = closed_form_spectrum(&h);
        let b = numeric_spectrum(&h);
        if !agree(a.omega_plus_sq, b.omega_plus_sq) || !agree(a.omega_minus_sq, b.omega_minus_sq) {
            failures += 1;
        }
        seen[match a.phase {
            Phase::Normal => 0,
            Phase::Critical => 1,
            Phase::Superradiant => 2,
        }] += 1;
    }
    let all_phases = seen.iter().all(|&c| c > 0);
    outcome(
        failures == 0 && all_phases,
        format!("1200 draws, {failures} disagreements; normal/critical/superradiant = {seen:?}"),
    )
}

fn critical_point() -> Outcome {
    let omega0 = critical_coupling(0.0, 1.0, 1.0, 1.0);
    let at_root = tied_omega_minus_sq(0.0, 1.0, 1.0, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    for _ in 0..100 {
        let kappa: f64 = rng.random_range(0.01..3.0);
        let gamma = rng.random_range(0.0..1.0) / kappa;
        let (wr, wj) = (rng.random_range(0.2..5.0), rng.random_range(0.2..5.0));
        match (critical_coupling(kappa, gamma, wr, wj), critical_coupling_numeric(kappa, gamma, wr, wj)) {
            (Some(a), Ok(Some(b))) => worst = worst.max((a - b).abs() / a),
            _ => missing += 1,
        }
    }
    let passed = omega0 == Some(0.5) && at_root.abs() < 1e-12 && missing == 0 && worst < 1e-10;
    outcome(
        passed,
        format!("Omega0 = {omega0:?}, omega_minus_sq(Omega0) = {at_root:e}, bisection worst rel dev {worst:e} over 100 draws"),
    )
}

fn no_go_region() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let omegas: Vec<f64> = (0..=72).map(|k| 10f64.powf(-6.0 + k as f64 / 6.0)).collect();
    let mut draws = vec![(0.4, 10.0, 1.0)];
    while draws.len() < 500 {
        let kappa: f64 = rng.random_range(0.05..5.0);
        let kg = if draws.len() % 10 == 0 { 1.0 } else { rng.random_range(1.0..10.0) };
        draws.push((kappa, kg / kappa, rng.random_range(0.1..10.0)));
    }
    let mut min_value = f64::INFINITY;
    for &(kappa, gamma, wj) in &draws {
        for &om in &omegas {
            min_value = min_value.min(tied_omega_minus_sq(kappa * gamma, 1.0, wj, om));
        }
    }
    let largest = *omegas.last().unwrap();
    outcome(
        min_value > 0.0 && critical_coupling(0.4, 10.0, 1.0, 1.0).is_none(),
        format!("500 draws x {} couplings up to {largest:e}; min omega_minus_sq = {min_value:e}", omegas.len()),
    )
}

fn cho_no_go() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut natural_unstable = 0;
    let mut bare_stable = 0;
    for _ in 0..1000 {
        let o1 = Oscillator { mass: rng.random_range(0.01..10.0), omega: rng.random_range(0.01..10.0) };
        let o2 = Oscillator { mass: rng.random_range(0.01..10.0), omega: rng.random_range(0.01..10.0) };
        let g = rng.random_range(1e-6..100.0);
        if !cho_no_go_check(o1, o2, g, Coupling::Natural).unwrap().stable {
            natural_unstable += 1;
        }
        let threshold = (o1.mass * o2.mass).sqrt() * o1.omega * o2.omega;
        let strong = threshold * rng.random_range(1.001..6.0);
        if cho_no_go_check(o1, o2, strong, Coupling::Bare).unwrap().stable {
            bare_stable += 1;
        }
    }
    outcome(
        natural_unstable == 0 && bare_stable == 0,
        format!("1000 draws: natural unstable {natural_unstable}, bare over-threshold stable {bare_stable}"),
    )
}

fn bcs_algebra() -> Outcome {
    match verify_suite(&[1, 2, 3], None) {
        Ok(checks) => {
            let failed: Vec<String> =
                checks.iter().filter(|c| !c.passed).map(|c| format!("{}@{}", c.identity, c.n_pairs)).collect();
            let worst_sine = checks
                .iter()
                .filter(|c| c.identity == "sin_law_residual")
                .map(|c| c.value)
                .fold(0.0, f64::max);
            outcome(
                failed.is_empty(),
                format!("{} checks, failed {failed:?}; worst sine-fit residual {worst_sine:e}", checks.len()),
            )
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn charging_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for s_z in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for n_g in [-0.7, 0.0, 0.25, 0.5, 1.3] {
            for e_c in [0.2, 3.0] {
                for gamma in [0.5, 10.0] {
                    let p = CircuitParams::new(e_c, 1.0, 1.0, gamma, 0.1, 1.0, 1);
                    let lhs = electrostatic_energy(n_g, &p) + tunneling_work(s_z, n_g, &p) + 2.0 * e_c * s_z;
                    let rhs = charging_hamiltonian_value(s_z, n_g, &p, ChargingConvention::Shifted);
                    worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0));
                    count += 1;
                }
            }
        }
    }
    outcome(worst <= 1e-14, format!("{count} grid points, worst scaled deviation {worst:e}"))
}

fn finite_size_scaling() -> Outcome {
    let model = CouplingModel { kappa: 0.0, gamma: 1.0, omega_r: 1.0, omega_j: 1.0 };
    let sizes = [4, 8, 16, 32];
    let grid: Vec<f64> = (0..=80).map(|k| 0.2 + 0.01 * k as f64).collect();
    let table = match scaling_scan(&sizes, &grid, &model, &ScanOptions::default()) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("scan error: {e}")),
    };
    let omega_c: Vec<f64> = table.estimates.iter().map(|e| e.omega_c).collect();
    let monotone = omega_c.windows(2).all(|w| w[1] <= w[0]);
    let no_edges = table.estimates.iter().all(|e| !e.at_grid_edge);
    let close = (omega_c[3] - 0.5).abs() < 0.1;
    let mut converged = table.points.iter().all(|p| p.result.cutoff_converged);

    let omega0 = critical_coupling(0.0, 1.0, 1.0, 1.0).unwrap();
    let mut strong = Vec::new();
    for &n in &sizes {
        let h = model.coefficients(n, 2.0 * omega0);
        match ground_state(&EDConfig::new(n, auto_cutoff(n, &h), h)) {
            Ok(r) => {
                converged &= r.cutoff_converged;
                strong.push(r.photon_density);
            }
            Err(e) => return outcome(false, format!("ED error: {e}")),
        }
    }
    let weak_h = model.coefficients(32, 0.5 * omega0);
    let weak = match ground_state(&EDConfig::new(32, auto_cutoff(32, &weak_h), weak_h)) {
        Ok(r) => {
            converged &= r.cutoff_converged;
            r.photon_density
        }
        Err(e) => return outcome(false, format!("ED error: {e}")),
    };
    let strong_ok = strong.iter().all(|&p| p > 0.5) && strong.windows(2).all(|w| w[1] > w[0]);
    outcome(
        monotone && no_edges && close && strong_ok && weak < 0.05 && converged,
        format!(
            "Omega_c(N) = {omega_c:?}; density at 2 Omega0 = {strong:.4?}; density at Omega0/2, N=32 = {weak:.3e}; all converged = {converged}"
        ),
    )
}

fn gap_consistency() -> Outcome {
    let omega0 = critical_coupling(0.0, 1.0, 1.0, 1.0).unwrap();
    let model = CouplingModel { kappa: 0.0, gamma: 1.0, omega_r: 1.0, omega_j: 1.0 };
    let h = model.coefficients(32, 0.25 * omega0);
    let omega_minus = closed_form_spectrum(&h).omega_minus_sq.sqrt();
    match ground_state(&EDConfig::new(32, auto_cutoff(32, &h), h)) {
        Ok(r) => {
            let rel = (r.gap - omega_minus).abs() / omega_minus;
            outcome(rel < 0.05, format!("ED gap {:.6}, omega_minus {:.6}, rel dev {rel:.3e}", r.gap, omega_minus))
        }
        Err(e) => outcome(false, format!("ED error: {e}")),
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_circuit-dicke")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_reproducibility() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap_or_default();
    let mut notes = Vec::new();
    let mut ok = true;

    let runs: [(&str, Vec<&str>); 3] = [
        ("spectrum", vec!["spectrum", "--omega-min", "0", "--omega-max", "1", "--steps", "41"]),
        ("phase", vec!["phase-diagram", "--kappa-steps", "11", "--gamma-steps", "11", "--jobs", "3"]),
        ("ed", vec!["ed-scan", "--n-atoms", "2,4", "--omega-min", "0.2", "--omega-max", "0.8", "--steps", "5", "--jobs", "2"]),
    ];
    for (name, args) in &runs {
        for format in ["csv", "json"] {
            let mut bytes = Vec::new();
            for run in 0..2 {
                let file = format!("{name}_{run}.{format}");
                let out = p(&file);
                let mut full = args.clone();
                full.extend(["--format", format, "--out", &out]);
                let (code, _) = cli(&full);
                ok &= code == 0;
                bytes.push(read(&file));
            }
            let same = !bytes[0].is_empty() && bytes[0] == bytes[1];
            ok &= same;
            notes.push(format!("{name}.{format} identical={same}"));
        }
    }

    let missing = p("no_such_dir/out.csv");
    let (io_code, _) = cli(&["spectrum", "--out", &missing]);
    let io_ok = io_code == 1 && !Path::new(&missing).exists();
    let (val_code, _) = cli(&["spectrum", "--steps", "0"]);
    let (cap_code, _) = cli(&["verify-bcs", "--n-pairs", "4"]);
    let (fault_code, _) = cli(&["verify-bcs", "--n-pairs", "1,2", "--inject-fault", "sin-law"]);
    let (ed_cap, _) = cli(&["ed-scan", "--n-atoms", "65"]);
    ok &= io_ok && val_code == 2 && cap_code == 2 && fault_code == 4 && ed_cap == 2;
    notes.push(format!("io={io_code} validation={val_code} caps={cap_code}/{ed_cap} fault={fault_code}"));
    outcome(ok, notes.join("; "))
}

type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", "spectrum oracle equivalence", Duration::from_secs(5), spectrum_oracle),
        ("A2", "critical point", Duration::from_secs(5), critical_point),
        ("A3", "no-go region", Duration::from_secs(5), no_go_region),
        ("A4", "coupled-oscillator no-go", Duration::from_secs(1), cho_no_go),
        ("A5", "pair pseudo-spin algebra", Duration::from_secs(30), bcs_algebra),
        ("A6", "charging identity", Duration::from_secs(1), charging_identity),
        ("A7", "finite-size scaling", Duration::from_secs(600), finite_size_scaling),
        ("A8", "normal-phase gap", Duration::from_secs(120), gap_consistency),
        ("A9", "CLI reproducibility and exit codes", Duration::from_secs(10), cli_reproducibility),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let passed = result.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "{} {id} {name}: {} [{:.2}s / {}s budget]",
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
