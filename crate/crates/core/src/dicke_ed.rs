//! Exact diagonalization of the N-atom Dicke Hamiltonian
//!
//! ```text
//! H = N E_C − ω_J J_x + (2Ω/√N) J_z (a + a†) + ω_r a†a + D (a + a†)² + F (a + a†)
//! ```
//!
//! in the symmetric spin sector `|J = N/2, m⟩ ⊗ |n⟩`, `n = 0..=photon_cutoff`.
//! The spin basis is the `J_z` (charge) basis, so every matrix element is
//! real. Basis index is `(m + J)·(photon_cutoff + 1) + n`.
//!
//! Each bosonic operator is projected onto the truncated Fock space (the
//! `(a + a†)²` diagonal is `2n + 1` for every kept level), which makes the
//! ground energy non-increasing in the cutoff.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{require_non_negative, Error, Result};
use crate::linalg::{lowest_eigenpair_from, lowest_eigenpairs, symmetric_eigen, CsrMatrix, LanczosOptions};
use crate::model::{derive_params, dicke_energy_offset, CircuitParams};
use crate::quadratic::{eliminate_linear, TwoModeQuadratic};

pub const MAX_ATOMS: usize = 64;
pub const MAX_PHOTON_CUTOFF: usize = 512;
pub const MAX_DIMENSION: usize = 40_000;

/// Largest dimension diagonalized densely on the first attempt.
pub const DENSE_DIMENSION: usize = 200;
/// Largest dimension for which a failed Lanczos run falls back to the dense
/// solver.
pub const DENSE_FALLBACK_DIMENSION: usize = 4000;

/// Relative change of the ground energy under cutoff doubling below which a
/// result counts as converged.
pub const CUTOFF_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EDConfig {
    pub n_atoms: usize,
    /// Highest kept Fock occupation.
    pub photon_cutoff: usize,
    /// Collective coefficients; the single-atom coupling is `Ω/√N`.
    pub coefficients: TwoModeQuadratic,
    /// Per-atom constant energy; contributes `N·e_c` to every level.
    pub e_c: f64,
    /// Seed for the Lanczos start vectors.
    pub seed: u64,
}

impl EDConfig {
    pub fn new(n_atoms: usize, photon_cutoff: usize, coefficients: TwoModeQuadratic) -> Self {
        EDConfig { n_atoms, photon_cutoff, coefficients, e_c: 0.0, seed: LanczosOptions::default().seed }
    }

    /// Configuration for the circuit, including its `N·E_C` offset.
    pub fn from_circuit(p: &CircuitParams, photon_cutoff: usize) -> Result<Self> {
        let derived = derive_params(p)?;
        let mut cfg = EDConfig::new(p.n_atoms, photon_cutoff, derived.two_mode(p.omega_r));
        cfg.e_c = dicke_energy_offset(p, false) / p.n_atoms as f64;
        Ok(cfg)
    }

    pub fn with_atom_constant(mut self, e_c: f64) -> Self {
        self.e_c = e_c;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_cutoff(mut self, photon_cutoff: usize) -> Self {
        self.photon_cutoff = photon_cutoff;
        self
    }

    pub fn dimension(&self) -> usize {
        (self.n_atoms + 1) * (self.photon_cutoff + 1)
    }

    pub fn single_atom_coupling(&self) -> f64 {
        self.coefficients.omega_big / (self.n_atoms as f64).sqrt()
    }

    pub fn energy_offset(&self) -> f64 {
        self.n_atoms as f64 * self.e_c
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        if self.n_atoms > MAX_ATOMS {
            return Err(Error::DimensionCap { what: "n_atoms", value: self.n_atoms, cap: MAX_ATOMS });
        }
        if self.photon_cutoff > MAX_PHOTON_CUTOFF {
            return Err(Error::DimensionCap { what: "photon_cutoff", value: self.photon_cutoff, cap: MAX_PHOTON_CUTOFF });
        }
        if self.dimension() > MAX_DIMENSION {
            return Err(Error::DimensionCap { what: "dimension", value: self.dimension(), cap: MAX_DIMENSION });
        }
        Ok(())
    }

    fn validate_shape(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::validation("n_atoms", "must be at least 1"));
        }
        if self.photon_cutoff == 0 {
            return Err(Error::validation("photon_cutoff", "must be at least 1"));
        }
        self.coefficients.validate()?;
        if !self.e_c.is_finite() {
            return Err(Error::validation("e_c", "must be finite"));
        }
        Ok(())
    }
}

/// Cutoff large enough for the ground state at these coefficients: room for
/// the superradiant photon population plus the coherent displacement of the
/// drive, capped at [`MAX_PHOTON_CUTOFF`].
pub fn auto_cutoff(n_atoms: usize, h: &TwoModeQuadratic) -> usize {
    let mut cutoff = 3 * n_atoms + 40;
    if let Ok(e) = eliminate_linear(h) {
        let eta = e.displacement.eta.norm();
        cutoff += (4.0 * eta * eta + 6.0 * eta).ceil() as usize;
    }
    cutoff.min(MAX_PHOTON_CUTOFF)
}

pub fn build_hamiltonian(cfg: &EDConfig) -> Result<CsrMatrix> {
    cfg.validate()?;
    Ok(assemble(cfg))
}

fn assemble(cfg: &EDConfig) -> CsrMatrix {
    let h = &cfg.coefficients;
    let nc = cfg.photon_cutoff + 1;
    let j = cfg.n_atoms as f64 / 2.0;
    let g = 2.0 * cfg.single_atom_coupling();
    let offset = cfg.energy_offset();
    let mut triplets = Vec::with_capacity(cfg.dimension() * 7);
    let mut push_pair = |r: usize, c: usize, v: f64| {
        if v != 0.0 {
            triplets.push((r, c, v));
            triplets.push((c, r, v));
        }
    };
    let mut diag = Vec::with_capacity(cfg.dimension());

    for mi in 0..=cfg.n_atoms {
        let m = mi as f64 - j;
        // ⟨m+1|J_x|m⟩ = ½√(j(j+1) − m(m+1))
        let jx = if mi < cfg.n_atoms { 0.5 * (j * (j + 1.0) - m * (m + 1.0)).sqrt() } else { 0.0 };
        for n in 0..nc {
            let idx = mi * nc + n;
            let nf = n as f64;
            diag.push((idx, idx, offset + h.omega_r * nf + h.d_coef * (2.0 * nf + 1.0)));
            if n + 1 < nc {
                let s = (nf + 1.0).sqrt();
                push_pair(idx, idx + 1, (g * m + h.f_coef) * s);
            }
            if n + 2 < nc {
                push_pair(idx, idx + 2, h.d_coef * ((nf + 1.0) * (nf + 2.0)).sqrt());
            }
            if mi < cfg.n_atoms {
                push_pair(idx, idx + nc, -h.omega_j * jx);
            }
        }
    }
    triplets.extend(diag);
    CsrMatrix::from_triplets(cfg.dimension(), triplets)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EDResult {
    pub ground_energy: f64,
    /// E₁ − E₀.
    pub gap: f64,
    /// ⟨a†a⟩ / N.
    pub photon_density: f64,
    /// Population inversion `−⟨Σ_j σ_j^x⟩ / N`: −1 when every atom sits in its
    /// single-atom ground state, +1 when all are excited.
    pub inversion: f64,
    /// Doubling the cutoff moved the ground energy by less than
    /// [`CUTOFF_TOLERANCE`] relative.
    pub cutoff_converged: bool,
}

/// Lowest `count` levels with eigenvectors, ascending.
pub fn lowest_levels(cfg: &EDConfig, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    cfg.validate()?;
    solve(&assemble(cfg), count, cfg.seed)
}

fn lanczos_options(seed: u64) -> LanczosOptions {
    LanczosOptions { tol: 1e-10, seed, ..Default::default() }
}

fn solve(m: &CsrMatrix, count: usize, seed: u64) -> Result<Vec<(f64, Vec<f64>)>> {
    let dim = m.dim();
    let count = count.min(dim);
    let dense = || -> Result<Vec<(f64, Vec<f64>)>> {
        let e = symmetric_eigen(&m.to_dense(), dim)?;
        Ok(e.values.into_iter().zip(e.vectors).take(count).collect())
    };
    if dim <= DENSE_DIMENSION {
        return dense();
    }
    match lowest_eigenpairs(m, count, &lanczos_options(seed)) {
        Err(Error::NoConvergence { .. }) if dim <= DENSE_FALLBACK_DIMENSION => dense(),
        other => other,
    }
}

pub fn ground_state(cfg: &EDConfig) -> Result<EDResult> {
    cfg.validate()?;
    let levels = solve(&assemble(cfg), 2, cfg.seed)?;
    let (e0, psi) = &levels[0];
    let gap = levels.get(1).map_or(0.0, |(e1, _)| (e1 - e0).max(0.0));

    let nc = cfg.photon_cutoff + 1;
    let n_atoms = cfg.n_atoms as f64;
    let j = n_atoms / 2.0;
    let mut photons = 0.0;
    let mut jx = 0.0;
    for mi in 0..=cfg.n_atoms {
        let m = mi as f64 - j;
        let up = if mi < cfg.n_atoms { 0.5 * (j * (j + 1.0) - m * (m + 1.0)).sqrt() } else { 0.0 };
        for n in 0..nc {
            let idx = mi * nc + n;
            photons += n as f64 * psi[idx] * psi[idx];
            if mi < cfg.n_atoms {
                jx += 2.0 * up * psi[idx] * psi[idx + nc];
            }
        }
    }

    let e0_fine = doubled_cutoff_energy(cfg, psi)?;
    let cutoff_converged = (e0 - e0_fine).abs() < CUTOFF_TOLERANCE * e0.abs().max(1.0);

    Ok(EDResult {
        ground_energy: *e0,
        gap,
        photon_density: photons / n_atoms,
        inversion: -2.0 * jx / n_atoms,
        cutoff_converged,
    })
}

/// Ground energy at twice the cutoff, with the Krylov space seeded by the
/// coarse ground state padded with zeros.
fn doubled_cutoff_energy(cfg: &EDConfig, psi: &[f64]) -> Result<f64> {
    let fine = cfg.with_cutoff(2 * cfg.photon_cutoff);
    fine.validate_shape()?;
    let m = assemble(&fine);
    if m.dim() <= DENSE_DIMENSION {
        return Ok(solve(&m, 1, cfg.seed)?[0].0);
    }
    let (nc, nf) = (cfg.photon_cutoff + 1, fine.photon_cutoff + 1);
    let mut start = vec![0.0; m.dim()];
    for mi in 0..=cfg.n_atoms {
        start[mi * nf..mi * nf + nc].copy_from_slice(&psi[mi * nc..(mi + 1) * nc]);
    }
    match lowest_eigenpair_from(&m, start, &lanczos_options(cfg.seed)) {
        Ok((e, _)) => Ok(e),
        Err(Error::NoConvergence { .. }) => Ok(solve(&m, 1, cfg.seed)?[0].0),
        Err(e) => Err(e),
    }
}

/// Couplings of a family of circuits differing only in the collective
/// coupling Ω: `D = κγΩ²/ω_J`, `F = (γ − 1)√N Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingModel {
    pub kappa: f64,
    pub gamma: f64,
    pub omega_r: f64,
    pub omega_j: f64,
}

impl CouplingModel {
    pub fn coefficients(&self, n_atoms: usize, omega_big: f64) -> TwoModeQuadratic {
        TwoModeQuadratic {
            omega_r: self.omega_r,
            omega_j: self.omega_j,
            omega_big,
            d_coef: self.kappa * self.gamma * omega_big * omega_big / self.omega_j,
            f_coef: (self.gamma - 1.0) * (n_atoms as f64).sqrt() * omega_big,
        }
    }

    fn validate(&self) -> Result<()> {
        require_non_negative("kappa", self.kappa)?;
        require_non_negative("gamma", self.gamma)?;
        crate::error::require_positive("omega_r", self.omega_r)?;
        crate::error::require_positive("omega_j", self.omega_j)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScanOptions {
    /// Fixed cutoff for every run; `None` picks [`auto_cutoff`] per point.
    pub photon_cutoff: Option<usize>,
    pub seed: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub n_atoms: usize,
    pub omega_big: f64,
    pub photon_cutoff: usize,
    pub result: EDResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalEstimate {
    pub n_atoms: usize,
    /// Ω at the susceptibility maximum.
    pub omega_c: f64,
    pub gap: f64,
    /// The maximum sits on the first or last interior grid point (or the grid
    /// is too short for a centred difference), so the estimate is unreliable.
    pub at_grid_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingTable {
    /// Row-major over N then Ω.
    pub points: Vec<ScanPoint>,
    pub estimates: Vec<CriticalEstimate>,
}

/// Index of the maximum of the centred-difference slope `dy/dx`, and whether
/// it lies at the edge of the usable range.
pub fn susceptibility_peak(x: &[f64], y: &[f64]) -> (usize, bool) {
    assert_eq!(x.len(), y.len());
    if x.len() < 3 {
        return (0, true);
    }
    let mut best = (1, f64::NEG_INFINITY);
    for i in 1..x.len() - 1 {
        let chi = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
        if chi > best.1 {
            best = (i, chi);
        }
    }
    let edge = best.0 == 1 || best.0 == x.len() - 2;
    (best.0, edge)
}

pub fn scaling_scan(n_list: &[usize], omega_grid: &[f64], model: &CouplingModel, opts: &ScanOptions) -> Result<ScalingTable> {
    model.validate()?;
    if n_list.is_empty() {
        return Err(Error::validation("n_list", "must not be empty"));
    }
    if omega_grid.is_empty() {
        return Err(Error::validation("omega_grid", "must not be empty"));
    }
    if omega_grid.iter().any(|w| !w.is_finite()) || omega_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::validation("omega_grid", "must be finite and strictly increasing"));
    }

    let mut configs = Vec::with_capacity(n_list.len() * omega_grid.len());
    for &n in n_list {
        for &omega in omega_grid {
            let h = model.coefficients(n, omega);
            let cutoff = opts.photon_cutoff.unwrap_or_else(|| auto_cutoff(n, &h));
            let mut cfg = EDConfig::new(n, cutoff, h);
            if let Some(seed) = opts.seed {
                cfg.seed = seed;
            }
            cfg.validate()?;
            configs.push(cfg);
        }
    }

    let run = || configs.par_iter().map(ground_state).collect::<Result<Vec<_>>>();
    let results = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::validation("jobs", e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let points: Vec<ScanPoint> = configs
        .iter()
        .zip(results)
        .map(|(cfg, result)| ScanPoint {
            n_atoms: cfg.n_atoms,
            omega_big: cfg.coefficients.omega_big,
            photon_cutoff: cfg.photon_cutoff,
            result,
        })
        .collect();

    let estimates = points
        .chunks(omega_grid.len())
        .map(|row| {
            let density: Vec<f64> = row.iter().map(|p| p.result.photon_density).collect();
            let (i, at_grid_edge) = susceptibility_peak(omega_grid, &density);
            CriticalEstimate { n_atoms: row[i].n_atoms, omega_c: row[i].omega_big, gap: row[i].result.gap, at_grid_edge }
        })
        .collect();

    Ok(ScalingTable { points, estimates })
}
