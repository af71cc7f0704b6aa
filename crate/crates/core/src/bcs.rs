//! Brute-force checks of the BCS pseudo-spin layer on explicit fermionic
//! Fock spaces.
//!
//! Two superconductors (left and right) each hold `n_pairs` time-reversed
//! mode pairs (k↑, −k↓), so the register has `4·n_pairs` fermionic modes.
//! Mode ordering is fixed: all left modes, then all right modes; within a
//! side, pair `k` occupies modes `2k` (k↑) and `2k + 1` (−k↓). Fock basis
//! states are bitmasks with bit `i` the occupation of mode `i`, and the
//! Jordan–Wigner string counts occupied modes with a lower index, so
//! `c_i |n⟩ = (−1)^{Σ_{j<i} n_j} |n − e_i⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// Largest supported number of mode pairs per side (4096-dimensional space).
pub const MAX_PAIRS_PER_SIDE: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Sparse complex matrix on a Fock space; rows hold `(column, value)` sorted
/// by column with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix { dim, rows: (0..dim).map(|r| vec![(r, ONE)]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.rows[r][k].1,
            Err(_) => ZERO,
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                rows[c].push((r, x.conj()));
            }
        }
        // rows were visited in order, so each new row is already sorted
        OperatorMatrix { dim: self.dim, rows }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(c, x)| (c, x * s)).filter(|e| e.1 != ZERO).collect())
            .collect();
        OperatorMatrix { dim: self.dim, rows }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
                    let (c, x) = if take_a {
                        i += 1;
                        a[i - 1]
                    } else if take_b {
                        j += 1;
                        (b[j - 1].0, b[j - 1].1 * sign)
                    } else {
                        i += 1;
                        j += 1;
                        (a[i - 1].0, a[i - 1].1 + b[j - 1].1 * sign)
                    };
                    if x != ZERO {
                        out.push((c, x));
                    }
                }
                out
            })
            .collect();
        OperatorMatrix { dim: self.dim, rows }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut acc = vec![ZERO; self.dim];
        let mut touched = vec![false; self.dim];
        let mut cols: Vec<usize> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        if !touched[c] {
                            touched[c] = true;
                            cols.push(c);
                        }
                        acc[c] += a * b;
                    }
                }
                cols.sort_unstable();
                let out: Vec<(usize, Complex64)> =
                    cols.iter().map(|&c| (c, acc[c])).filter(|e| e.1 != ZERO).collect();
                for &c in &cols {
                    acc[c] = ZERO;
                    touched[c] = false;
                }
                cols.clear();
                out
            })
            .collect();
        OperatorMatrix { dim: self.dim, rows }
    }

    /// `[A, B] = AB − BA`
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `{A, B} = AB + BA`
    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().map(|e| e.1.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `A − A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        self.rows.iter().map(|row| row.iter().map(|&(c, a)| a * x[c]).sum()).collect()
    }

    /// `⟨ψ|A|ψ⟩`
    pub fn expectation(&self, psi: &[Complex64]) -> Complex64 {
        let a_psi = self.apply(psi);
        psi.iter().zip(&a_psi).map(|(p, q)| p.conj() * q).sum()
    }

    /// Dense restriction `P A P` to the span of the given basis states, in
    /// the order given (row-major).
    pub fn restrict(&self, basis: &[usize]) -> Vec<Complex64> {
        let n = basis.len();
        let mut out = vec![ZERO; n * n];
        for (i, &r) in basis.iter().enumerate() {
            for (j, &c) in basis.iter().enumerate() {
                out[i * n + j] = self.get(r, c);
            }
        }
        out
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        self.matmul(rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Member of a time-reversed pair: `Up` is k↑, `Down` is −k↓.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMember {
    Up,
    Down,
}

/// Fermionic Fock space of a two-sided junction with explicit
/// creation/annihilation matrices.
#[derive(Clone, Debug)]
pub struct FermionRegister {
    n_pairs: usize,
    annihilators: Vec<OperatorMatrix>,
}

impl FermionRegister {
    /// Builds the register and checks the canonical anticommutation
    /// relations as exact matrix identities.
    pub fn new(n_pairs_per_side: usize) -> Result<Self> {
        if n_pairs_per_side == 0 || n_pairs_per_side > MAX_PAIRS_PER_SIDE {
            return Err(Error::validation(
                "n_pairs_per_side",
                format!("must be in 1..={MAX_PAIRS_PER_SIDE}, got {n_pairs_per_side}"),
            ));
        }
        let n_modes = 4 * n_pairs_per_side;
        let dim = 1usize << n_modes;
        let annihilators = (0..n_modes)
            .map(|i| {
                let mut rows = vec![Vec::new(); dim];
                for state in 0..dim {
                    if state >> i & 1 == 1 {
                        let parity = (state & ((1 << i) - 1)).count_ones();
                        let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
                        rows[state ^ (1 << i)].push((state, Complex64::new(sign, 0.0)));
                    }
                }
                OperatorMatrix { dim, rows }
            })
            .collect();
        let reg = FermionRegister { n_pairs: n_pairs_per_side, annihilators };
        let (mixed, same) = reg.car_defects();
        if mixed != 0.0 || same != 0.0 {
            return Err(Error::InvariantViolation {
                identity: "canonical anticommutation".into(),
                defect: mixed.max(same),
            });
        }
        Ok(reg)
    }

    pub fn n_pairs_per_side(&self) -> usize {
        self.n_pairs
    }

    pub fn n_modes(&self) -> usize {
        4 * self.n_pairs
    }

    /// Total Fock dimension, `4^(2·n_pairs)`.
    pub fn dimension(&self) -> usize {
        1 << self.n_modes()
    }

    pub fn mode(&self, side: Side, k: usize, member: PairMember) -> usize {
        assert!(k < self.n_pairs, "pair index {k} out of range");
        let base = match side {
            Side::Left => 0,
            Side::Right => 2 * self.n_pairs,
        };
        base + 2 * k + matches!(member, PairMember::Down) as usize
    }

    pub fn annihilator(&self, mode: usize) -> &OperatorMatrix {
        &self.annihilators[mode]
    }

    pub fn creator(&self, mode: usize) -> OperatorMatrix {
        self.annihilators[mode].adjoint()
    }

    pub fn number(&self, mode: usize) -> OperatorMatrix {
        self.creator(mode).matmul(&self.annihilators[mode])
    }

    /// Total electron number on one side.
    pub fn side_number(&self, side: Side) -> OperatorMatrix {
        let mut total = OperatorMatrix::zeros(self.dimension());
        for k in 0..self.n_pairs {
            for member in [PairMember::Up, PairMember::Down] {
                total = &total + &self.number(self.mode(side, k, member));
            }
        }
        total
    }

    /// Largest deviations from `{c_i, c_j†} = δ_ij` and `{c_i, c_j} = 0`
    /// over all mode pairs.
    pub fn car_defects(&self) -> (f64, f64) {
        let dim = self.dimension();
        let identity = OperatorMatrix::identity(dim);
        let creators: Vec<OperatorMatrix> = (0..self.n_modes()).map(|i| self.creator(i)).collect();
        let mut mixed: f64 = 0.0;
        let mut same: f64 = 0.0;
        for i in 0..self.n_modes() {
            for j in 0..self.n_modes() {
                let ac = self.annihilators[i].anticommutator(&creators[j]);
                let defect = if i == j { (&ac - &identity).max_abs() } else { ac.max_abs() };
                mixed = mixed.max(defect);
                if j >= i {
                    same = same.max(self.annihilators[i].anticommutator(&self.annihilators[j]).max_abs());
                }
            }
        }
        (mixed, same)
    }

    /// Fock states in which every (k, −k) pair is either empty or doubly
    /// occupied, in increasing index order.
    pub fn paired_basis(&self) -> Vec<usize> {
        (0..self.dimension())
            .filter(|&s| (0..2 * self.n_pairs).all(|p| (s >> (2 * p) & 1) == (s >> (2 * p + 1) & 1)))
            .collect()
    }

    /// Number of occupied pairs on each side of a paired basis state.
    pub fn pair_counts(&self, state: usize) -> (usize, usize) {
        let count = |side| (0..self.n_pairs).filter(|&k| state >> self.mode(side, k, PairMember::Up) & 1 == 1).count();
        (count(Side::Left), count(Side::Right))
    }
}

/// Pseudo-spin pair operator `S_α = (1/√2𝒩) Σ_k c_{−k,α} c_{k,α}` and
/// `S_{z,α} = ½ Σ_k (n_{k,α} + n_{−k,α} − 1)` for one side.
pub fn build_pseudospin(reg: &FermionRegister, side: Side) -> (OperatorMatrix, OperatorMatrix) {
    let dim = reg.dimension();
    let np = reg.n_pairs_per_side();
    let mut s = OperatorMatrix::zeros(dim);
    let mut sz = OperatorMatrix::zeros(dim);
    let identity = OperatorMatrix::identity(dim);
    for k in 0..np {
        let up = reg.mode(side, k, PairMember::Up);
        let down = reg.mode(side, k, PairMember::Down);
        s = &s + &reg.annihilator(down).matmul(reg.annihilator(up));
        let occ = &(&reg.number(up) + &reg.number(down)) - &identity;
        sz = &sz + &occ;
    }
    (s.scale_real(1.0 / (2f64.sqrt() * np as f64)), sz.scale_real(0.5))
}

/// Pair-tunneling operators of the junction, bundled so they are built once.
#[derive(Clone, Debug)]
pub struct PairOperators {
    pub s_left: OperatorMatrix,
    pub s_right: OperatorMatrix,
    pub sz_left: OperatorMatrix,
    pub sz_right: OperatorMatrix,
    /// `S⁻ = S_L S_R†`: one pair moves from left to right.
    pub s_minus: OperatorMatrix,
    /// `S⁺ = (S⁻)†`
    pub s_plus: OperatorMatrix,
    /// `S_z = (S_{z,L} − S_{z,R}) / 2`
    pub s_z: OperatorMatrix,
}

impl PairOperators {
    pub fn new(reg: &FermionRegister) -> Self {
        let (s_left, sz_left) = build_pseudospin(reg, Side::Left);
        let (s_right, sz_right) = build_pseudospin(reg, Side::Right);
        let s_minus = s_left.matmul(&s_right.adjoint());
        let s_plus = s_minus.adjoint();
        let s_z = (&sz_left - &sz_right).scale_real(0.5);
        PairOperators { s_left, s_right, sz_left, sz_right, s_minus, s_plus, s_z }
    }
}

/// Tunneling Hamiltonian `H_T = −2𝒩² T (S⁺ + S⁻)`.
pub fn build_tunneling(reg: &FermionRegister, t_amp: f64) -> OperatorMatrix {
    tunneling_from(&PairOperators::new(reg), reg.n_pairs_per_side(), t_amp)
}

fn tunneling_from(ops: &PairOperators, n_pairs: usize, t_amp: f64) -> OperatorMatrix {
    let np = n_pairs as f64;
    (&ops.s_plus + &ops.s_minus).scale_real(-2.0 * np * np * t_amp)
}

/// Product BCS state `|φ_L⟩ ⊗ |φ_R⟩` with
/// `|φ_α⟩ = Π_k [u_k + v_k e^{iφ_α} c†_{−k,α} c†_{k,α}] |0⟩`.
pub fn bcs_product_state(reg: &FermionRegister, u: &[f64], v: &[f64], phi_l: f64, phi_r: f64) -> Result<Vec<Complex64>> {
    let np = reg.n_pairs_per_side();
    if u.len() != np || v.len() != np {
        return Err(Error::validation(
            "u/v",
            format!("need {np} amplitudes per list, got {} and {}", u.len(), v.len()),
        ));
    }
    for (k, (uk, vk)) in u.iter().zip(v).enumerate() {
        let w = uk * uk + vk * vk;
        if (w - 1.0).abs() > 1e-12 {
            return Err(Error::Unnormalized { detail: format!("pair {k}: |u|² + |v|² = {w}") });
        }
    }
    let mut psi = vec![ZERO; reg.dimension()];
    psi[0] = ONE;
    for (side, phi) in [(Side::Left, phi_l), (Side::Right, phi_r)] {
        for k in 0..np {
            let up = reg.mode(side, k, PairMember::Up);
            let down = reg.mode(side, k, PairMember::Down);
            let pair_create = reg.creator(down).matmul(&reg.creator(up));
            let created = pair_create.apply(&psi);
            let phase = Complex64::from_polar(v[k], phi);
            for (p, c) in psi.iter_mut().zip(created) {
                *p = *p * u[k] + phase * c;
            }
        }
    }
    let norm = state_norm(&psi);
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Unnormalized { detail: format!("product state norm {norm}") });
    }
    Ok(psi)
}

fn state_norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Josephson current operator for a given tunneling amplitude.
///
/// The current is `J = (−2q_e/iħ)[N_L, H_T]` with electron charge
/// `q_e = −e`, i.e. the pair charge times the rate at which electrons
/// accumulate on the left electrode. It is Hermitian and gives
/// `⟨J⟩ = I sin(φ_L − φ_R)` with `I > 0` for `T > 0`.
#[derive(Clone, Debug)]
pub struct CurrentOperator {
    op: OperatorMatrix,
}

impl CurrentOperator {
    pub fn new(reg: &FermionRegister, t_amp: f64) -> Result<Self> {
        let h_t = build_tunneling(reg, t_amp);
        let n_left = reg.side_number(Side::Left);
        // (−2q_e / i)[N_L, H_T] with q_e = −1 is −2i [N_L, H_T]
        let op = n_left.commutator(&h_t).scale(Complex64::new(0.0, -2.0));
        let defect = op.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::NonHermitian { name: "josephson current", defect });
        }
        Ok(CurrentOperator { op })
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.op
    }

    pub fn expectation(&self, state: &[Complex64]) -> Result<f64> {
        let norm = state_norm(state);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Unnormalized { detail: format!("state norm {norm}") });
        }
        Ok(self.op.expectation(state).re)
    }
}

/// `⟨state| J |state⟩` for tunneling amplitude `t_amp`.
pub fn josephson_current(reg: &FermionRegister, state: &[Complex64], t_amp: f64) -> Result<f64> {
    CurrentOperator::new(reg, t_amp)?.expectation(state)
}

/// Least-squares fit of `y ≈ A sin(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineFit {
    pub amplitude: f64,
    /// `‖y − A sin x‖ / ‖y‖`
    pub relative_residual: f64,
}

pub fn fit_sine(phases: &[f64], values: &[f64]) -> SineFit {
    let ss: f64 = phases.iter().map(|x| x.sin().powi(2)).sum();
    let sy: f64 = phases.iter().zip(values).map(|(x, y)| x.sin() * y).sum();
    let amplitude = sy / ss;
    let res: f64 = phases.iter().zip(values).map(|(x, y)| (y - amplitude * x.sin()).powi(2)).sum::<f64>().sqrt();
    let scale: f64 = values.iter().map(|y| y * y).sum::<f64>().sqrt();
    SineFit { amplitude, relative_residual: if scale == 0.0 { 0.0 } else { res / scale } }
}

/// Spectral norm of `[S⁺, S⁻] − 2S_z/𝒩²` restricted to paired states with
/// `|S_z| ≤ 1/2` (at most one excess pair between the electrodes).
pub fn commutator_defect_low_imbalance(reg: &FermionRegister, ops: &PairOperators) -> Result<f64> {
    let np = reg.n_pairs_per_side() as f64;
    let defect = &ops.s_plus.commutator(&ops.s_minus) - &ops.s_z.scale_real(2.0 / (np * np));
    let sector: Vec<usize> = reg
        .paired_basis()
        .into_iter()
        .filter(|&s| {
            let (l, r) = reg.pair_counts(s);
            l.abs_diff(r) <= 1
        })
        .collect();
    hermitian_norm(&defect.restrict(&sector), sector.len())
}

fn hermitian_norm(m: &[Complex64], n: usize) -> Result<f64> {
    // the pair operators have real matrix elements
    let imag = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > 1e-14 {
        return Err(Error::InvariantViolation { identity: "real restricted matrix".into(), defect: imag });
    }
    let re: Vec<f64> = m.iter().map(|z| z.re).collect();
    let eig = symmetric_eigen(&re, n)?;
    Ok(eig.values.iter().map(|x| x.abs()).fold(0.0, f64::max))
}

/// `H_T` restricted to paired states holding `total_pairs` pairs, ordered by
/// increasing `S_z`. Returns the basis and the dense real matrix.
pub fn paired_tunneling_block(reg: &FermionRegister, t_amp: f64, total_pairs: usize) -> (Vec<usize>, Vec<f64>) {
    let mut basis: Vec<usize> = reg
        .paired_basis()
        .into_iter()
        .filter(|&s| {
            let (l, r) = reg.pair_counts(s);
            l + r == total_pairs
        })
        .collect();
    basis.sort_by_key(|&s| {
        let (l, r) = reg.pair_counts(s);
        (l as i64 - r as i64, s)
    });
    let h = build_tunneling(reg, t_amp).restrict(&basis);
    (basis, h.into_iter().map(|z| z.re).collect())
}

/// Deliberate faults for exercising the verification report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Contaminates the measured current with a cos(Δφ) component.
    SinLaw,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub n_pairs: usize,
    /// Measured defect (or, for sign checks, the measured quantity).
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl IdentityCheck {
    fn at_most(identity: &'static str, n_pairs: usize, value: f64, limit: f64) -> Self {
        IdentityCheck { identity, n_pairs, value, limit, passed: value <= limit }
    }
}

/// Phase differences used for the current-phase relation.
pub fn phase_sweep(points: usize) -> Vec<f64> {
    (0..points).map(|i| 2.0 * PI * i as f64 / points as f64).collect()
}

const IDENTITY_TOL: f64 = 1e-13;
const SINE_RESIDUAL_TOL: f64 = 1e-10;

/// Runs every pseudo-spin identity for one register size.
pub fn verify_register(n_pairs: usize, fault: Option<Fault>) -> Result<Vec<IdentityCheck>> {
    let reg = FermionRegister::new(n_pairs)?;
    let ops = PairOperators::new(&reg);
    let np = n_pairs as f64;
    let mut checks = Vec::new();

    let (mixed, same) = reg.car_defects();
    checks.push(IdentityCheck::at_most("car_creation_annihilation", n_pairs, mixed, IDENTITY_TOL));
    checks.push(IdentityCheck::at_most("car_annihilation_pair", n_pairs, same, IDENTITY_TOL));

    for (name, s, sz) in [
        ("pair_commutator_left", &ops.s_left, &ops.sz_left),
        ("pair_commutator_right", &ops.s_right, &ops.sz_right),
    ] {
        let d = (&s.commutator(&s.adjoint()) + &sz.scale_real(1.0 / (np * np))).max_abs();
        checks.push(IdentityCheck::at_most(name, n_pairs, d, IDENTITY_TOL));
    }

    let ladder_plus = (&ops.s_plus.commutator(&ops.s_z) + &ops.s_plus).max_abs();
    let ladder_minus = (&ops.s_minus.commutator(&ops.s_z) - &ops.s_minus).max_abs();
    checks.push(IdentityCheck::at_most("sz_ladder", n_pairs, ladder_plus.max(ladder_minus), IDENTITY_TOL));

    let h_t = tunneling_from(&ops, n_pairs, 1.0);
    checks.push(IdentityCheck::at_most("tunneling_hermitian", n_pairs, h_t.hermiticity_defect(), IDENTITY_TOL));

    let current = CurrentOperator::new(&reg, 1.0)?;
    checks.push(IdentityCheck::at_most(
        "current_hermitian",
        n_pairs,
        current.matrix().hermiticity_defect(),
        IDENTITY_TOL,
    ));

    let u = vec![FRAC_1_SQRT_2; n_pairs];
    let v = vec![FRAC_1_SQRT_2; n_pairs];
    let phi_r = 0.3;
    let deltas = phase_sweep(16);
    let mut currents = Vec::with_capacity(deltas.len());
    let mut shift_defect: f64 = 0.0;
    for &delta in &deltas {
        let psi = bcs_product_state(&reg, &u, &v, phi_r + delta, phi_r)?;
        let j = current.expectation(&psi)?;
        let shifted = bcs_product_state(&reg, &u, &v, phi_r + delta + 1.1, phi_r + 1.1)?;
        shift_defect = shift_defect.max((current.expectation(&shifted)? - j).abs());
        currents.push(j);
    }
    if fault == Some(Fault::SinLaw) {
        let peak = currents.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for (j, d) in currents.iter_mut().zip(&deltas) {
            *j += 1e-3 * peak * d.cos();
        }
    }
    let fit = fit_sine(&deltas, &currents);
    checks.push(IdentityCheck::at_most("sin_law_residual", n_pairs, fit.relative_residual, SINE_RESIDUAL_TOL));
    checks.push(IdentityCheck {
        identity: "sin_law_amplitude_positive",
        n_pairs,
        value: fit.amplitude,
        limit: 0.0,
        passed: fit.amplitude > 0.0,
    });
    checks.push(IdentityCheck::at_most("phase_difference_only", n_pairs, shift_defect, 1e-12));
    Ok(checks)
}

/// Full report: per-register identities plus the check that the
/// `[S⁺, S⁻] ≈ 2S_z/𝒩²` defect does not grow with 𝒩.
pub fn verify_suite(sizes: &[usize], fault: Option<Fault>) -> Result<Vec<IdentityCheck>> {
    let mut checks = Vec::new();
    let mut defects: Vec<(usize, f64)> = Vec::new();
    for &n in sizes {
        checks.extend(verify_register(n, fault)?);
        let reg = FermionRegister::new(n)?;
        let ops = PairOperators::new(&reg);
        defects.push((n, commutator_defect_low_imbalance(&reg, &ops)?));
    }
    defects.sort_by_key(|d| d.0);
    for w in defects.windows(2) {
        let ((_, a), (n_b, b)) = (w[0], w[1]);
        checks.push(IdentityCheck {
            identity: "commutator_defect_non_increasing",
            n_pairs: n_b,
            value: b,
            limit: a,
            passed: b <= a + 1e-14,
        });
    }
    Ok(checks)
}
