//! Dense complex matrix helpers shared by every layer.
//!
//! The eigensolver here is the cyclic Jacobi method for complex Hermitian
//! matrices. Each rotation first removes the phase of the pivot entry and
//! then applies a real plane rotation, so the accumulated transform stays
//! unitary.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type CMat = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Eigen-decomposition `a = V·diag(values)·V*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    /// `V·diag(f(λ))·V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let w = real(f(lambda));
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    /// Columns of `V` whose eigenvalue satisfies `keep`.
    pub fn select_vectors(&self, keep: impl Fn(f64) -> bool) -> CMat {
        let cols: Vec<usize> = (0..self.values.len())
            .filter(|&j| keep(self.values[j]))
            .collect();
        self.vectors.select_columns(cols.iter())
    }
}

/// Cyclic Jacobi eigensolver. Only the Hermitian part of `a` is used.
pub fn jacobi_eigen(a: &CMat) -> Result<HermitianEigen> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "jacobi_eigen needs a square matrix");
    let mut m = (a + a.adjoint()) * real(0.5);
    let mut v = CMat::identity(n, n);
    let threshold = tol::JACOBI_OFFDIAG * m.norm();

    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let pivot = m[(p, q)];
                let r = pivot.norm();
                if r <= threshold {
                    continue;
                }
                rotated = true;
                let phase = pivot / r;
                let tau = (m[(q, q)].re - m[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate_columns(&mut m, p, q, c, s, phase);
                rotate_rows(&mut m, p, q, c, s, phase);
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = real(m[(p, p)].re);
                m[(q, q)] = real(m[(q, q)].re);
                rotate_columns(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: tol::JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep their original position
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = v.select_columns(order.iter());
    Ok(HermitianEigen { values, vectors })
}

// x ← x·V where V acts on columns p, q.
fn rotate_columns(x: &mut CMat, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let pc = phase.conj();
    for k in 0..x.nrows() {
        let xp = x[(k, p)];
        let xq = x[(k, q)];
        x[(k, p)] = xp * c - xq * pc * s;
        x[(k, q)] = xp * s + xq * pc * c;
    }
}

// x ← V*·x where V acts on rows p, q.
fn rotate_rows(x: &mut CMat, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for k in 0..x.ncols() {
        let xp = x[(p, k)];
        let xq = x[(q, k)];
        x[(p, k)] = xp * c - xq * phase * s;
        x[(q, k)] = xp * s + xq * phase * c;
    }
}

/// Largest singular value.
pub fn spectral_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let gram = if a.nrows() <= a.ncols() {
        a * a.adjoint()
    } else {
        a.adjoint() * a
    };
    match jacobi_eigen(&gram) {
        Ok(eig) => eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
        // Frobenius norm is an upper bound; only reachable on pathological input.
        Err(_) => a.norm(),
    }
}

/// `‖a − a*‖`.
pub(crate) fn hermitian_residual(a: &CMat) -> f64 {
    spectral_norm(&(a - a.adjoint()))
}
