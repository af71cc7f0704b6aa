//! Lowest eigenpairs of a large symmetric operator.
//!
//! Each eigenpair is found by a separate Lanczos run with full
//! reorthogonalization; later runs are deflated against the vectors already
//! found, so exactly degenerate levels are reported with their multiplicity.
//! A run that exhausts its Krylov basis restarts from its best Ritz vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{axpy_neg, dot, norm, tridiagonal_eigen};
use crate::error::{Error, Result};

pub trait LinearOperator {
    fn dim(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOptions {
    /// Largest Krylov basis kept before an explicit restart.
    pub max_basis: usize,
    pub max_restarts: usize,
    /// Residual `‖A x − θ x‖` target, relative to `max(1, |θ|)`.
    pub tol: f64,
    /// Seed for the random start vectors.
    pub seed: u64,
}

impl LanczosOptions {
    pub const DEFAULT_SEED: u64 = 20_240_917;
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { max_basis: 200, max_restarts: 30, tol: 1e-9, seed: Self::DEFAULT_SEED }
    }
}

const CHECK_EVERY: usize = 8;

/// The `count` lowest eigenpairs in ascending order.
pub fn lowest_eigenpairs<A: LinearOperator>(op: &A, count: usize, opts: &LanczosOptions) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = op.dim();
    assert!(count <= n, "cannot ask for {count} eigenpairs of a {n}-dimensional operator");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: Vec<(f64, Vec<f64>)> = Vec::with_capacity(count);
    for _ in 0..count {
        let start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let locked: Vec<&[f64]> = found.iter().map(|(_, v)| v.as_slice()).collect();
        let pair = lowest_deflated(op, &locked, start, opts)?;
        found.push(pair);
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(found)
}

/// Lowest eigenpair, starting the Krylov space from `start` (for example an
/// approximate eigenvector from a related problem).
pub fn lowest_eigenpair_from<A: LinearOperator>(op: &A, start: Vec<f64>, opts: &LanczosOptions) -> Result<(f64, Vec<f64>)> {
    assert_eq!(start.len(), op.dim(), "start vector has the wrong length");
    lowest_deflated(op, &[], start, opts)
}

fn project_out(locked: &[&[f64]], w: &mut [f64]) {
    for q in locked {
        let c = dot(q, w);
        axpy_neg(c, q, w);
    }
}

fn lowest_deflated<A: LinearOperator>(
    op: &A,
    locked: &[&[f64]],
    mut v0: Vec<f64>,
    opts: &LanczosOptions,
) -> Result<(f64, Vec<f64>)> {
    let n = op.dim();
    let m_max = opts.max_basis.min(n - locked.len()).max(1);
    let mut iterations = 0;
    let mut last_residual = f64::INFINITY;

    for _restart in 0..=opts.max_restarts {
        project_out(locked, &mut v0);
        project_out(locked, &mut v0);
        let nv = norm(&v0);
        if nv == 0.0 {
            return Err(Error::NoConvergence { iterations, residual: f64::NAN });
        }
        v0.iter_mut().for_each(|x| *x /= nv);

        let mut basis: Vec<Vec<f64>> = vec![v0.clone()];
        let mut alphas: Vec<f64> = Vec::with_capacity(m_max);
        let mut betas: Vec<f64> = Vec::with_capacity(m_max);
        let mut w = vec![0.0; n];

        for j in 0..m_max {
            iterations += 1;
            op.apply(&basis[j], &mut w);
            project_out(locked, &mut w);
            let alpha = dot(&basis[j], &w);
            axpy_neg(alpha, &basis[j], &mut w);
            if j > 0 {
                axpy_neg(betas[j - 1], &basis[j - 1], &mut w);
            }
            // two passes of classical Gram-Schmidt keep the basis orthogonal
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    axpy_neg(c, b, &mut w);
                }
                project_out(locked, &mut w);
            }
            alphas.push(alpha);
            let beta = norm(&w);
            let scale = alphas.iter().map(|a| a.abs()).fold(beta, f64::max).max(1.0);
            let breakdown = beta <= 1e-14 * scale;

            if breakdown || (j + 1) % CHECK_EVERY == 0 || j + 1 == m_max {
                let t = tridiagonal_eigen(&alphas, &betas)?;
                let theta = t.values[0];
                let y = &t.vectors[0];
                let residual = if breakdown { 0.0 } else { beta * y[j].abs() };
                last_residual = residual;
                if residual <= opts.tol * theta.abs().max(1.0) || j + 1 == m_max {
                    let mut x = vec![0.0; n];
                    for (coef, b) in y.iter().zip(&basis) {
                        axpy_neg(-coef, b, &mut x);
                    }
                    let nx = norm(&x);
                    x.iter_mut().for_each(|xi| *xi /= nx);
                    if residual <= opts.tol * theta.abs().max(1.0) {
                        return Ok((theta, x));
                    }
                    v0 = x;
                    break;
                }
            }
            betas.push(beta);
            basis.push(w.iter().map(|x| x / beta).collect());
        }
    }
    Err(Error::NoConvergence { iterations, residual: last_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{symmetric_eigen, CsrMatrix};

    fn chain(n: usize, onsite: impl Fn(usize) -> f64) -> CsrMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, onsite(i)));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        CsrMatrix::from_triplets(n, t)
    }

    #[test]
    fn agrees_with_dense() {
        let n = 300;
        let m = chain(n, |i| ((i * 7919) % 13) as f64 * 0.3);
        let dense = symmetric_eigen(&m.to_dense(), n).unwrap();
        let pairs = lowest_eigenpairs(&m, 3, &LanczosOptions::default()).unwrap();
        for (k, (lam, x)) in pairs.iter().enumerate() {
            assert!((lam - dense.values[k]).abs() < 1e-10, "level {k}: {lam} vs {}", dense.values[k]);
            let ax = m.mul_vec(x);
            let r: f64 = ax.iter().zip(x).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
            assert!(r < 1e-8);
        }
    }

    #[test]
    fn resolves_exact_degeneracy() {
        // two decoupled identical blocks: every level is doubly degenerate
        let n = 80;
        let half = chain(n / 2, |i| (i as f64 * 0.1).sin());
        let mut t = Vec::new();
        for r in 0..n / 2 {
            for (c, x) in half.row(r) {
                t.push((r, c, x));
                t.push((r + n / 2, c + n / 2, x));
            }
        }
        let m = CsrMatrix::from_triplets(n, t);
        let pairs = lowest_eigenpairs(&m, 2, &LanczosOptions::default()).unwrap();
        assert!((pairs[0].0 - pairs[1].0).abs() < 1e-10);
        assert!(dot(&pairs[0].1, &pairs[1].1).abs() < 1e-8);
    }

    #[test]
    fn restarts_when_basis_is_small() {
        let n = 200;
        let m = chain(n, |i| (i as f64 / 20.0).powi(2));
        let opts = LanczosOptions { max_basis: 16, max_restarts: 200, ..Default::default() };
        let dense = symmetric_eigen(&m.to_dense(), n).unwrap();
        let pairs = lowest_eigenpairs(&m, 1, &opts).unwrap();
        assert!((pairs[0].0 - dense.values[0]).abs() < 1e-10);
    }

    #[test]
    fn warm_start_from_eigenvector() {
        let n = 250;
        let m = chain(n, |i| ((i * 31) % 7) as f64 * 0.2);
        let cold = lowest_eigenpairs(&m, 1, &LanczosOptions::default()).unwrap();
        let (theta, _) = lowest_eigenpair_from(&m, cold[0].1.clone(), &LanczosOptions::default()).unwrap();
        assert!((theta - cold[0].0).abs() < 1e-12);
        let mut rough = cold[0].1.clone();
        rough[0] += 0.1;
        let (theta, _) = lowest_eigenpair_from(&m, rough, &LanczosOptions::default()).unwrap();
        assert!((theta - cold[0].0).abs() < 1e-10);
    }

    #[test]
    fn reports_failure() {
        let n = 200;
        let m = chain(n, |i| (i as f64 / 20.0).powi(2));
        let opts = LanczosOptions { max_basis: 3, max_restarts: 1, ..Default::default() };
        assert!(matches!(lowest_eigenpairs(&m, 1, &opts), Err(Error::NoConvergence { .. })));
    }
}
