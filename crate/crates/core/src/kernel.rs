//! Dense complex matrix primitives.
//!
//! Everything in the frame engine reduces to a handful of factorizations on
//! small dense matrices: a thin SVD (for ranks, pseudo-inverses and
//! orthonormal bases) and a Hermitian eigendecomposition (for frame bounds
//! and operator square roots). The SVD is a one-sided Jacobi iteration, which
//! stays accurate on rank-deficient input; the eigendecomposition is
//! `nalgebra`'s. This module pins down the conventions (ordering, cutoffs,
//! empty shapes) the rest of the crate relies on.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

const MAX_ITERATIONS: usize = 10_000;
const MAX_SWEEPS: usize = 100;

/// Default relative singular-value cutoff.
pub const DEFAULT_RANK_REL: f64 = 1e-13;
/// Default absolute residual bound.
pub const DEFAULT_RESIDUAL_ABS: f64 = 1e-9;

/// Numerical tolerances shared by every rank and residual decision.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    /// Singular values at or below `rank_rel * sigma_max` count as zero.
    pub rank_rel: f64,
    /// Absolute bound for identity residuals.
    pub residual_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_rel: DEFAULT_RANK_REL,
            residual_abs: DEFAULT_RESIDUAL_ABS,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, residual_abs: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0 && x < 1.0;
        if !ok(rank_rel) || !ok(residual_abs) {
            return Err(Error::InvalidSpec(format!(
                "tolerances must lie in (0, 1), got rank_rel={rank_rel}, residual_abs={residual_abs}"
            )));
        }
        Ok(Tolerance {
            rank_rel,
            residual_abs,
        })
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Thin singular value decomposition `m = u * diag(sigma) * vh`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    /// Non-negative, descending.
    pub sigma: Vec<f64>,
    pub vh: Matrix,
}

impl Svd {
    pub fn rank(&self, tol: &Tolerance) -> usize {
        rank_of_sigma(&self.sigma, tol)
    }
}

fn rank_of_sigma(sigma: &[f64], tol: &Tolerance) -> usize {
    let Some(&max) = sigma.first() else {
        return 0;
    };
    if max <= 0.0 {
        return 0;
    }
    let cutoff = tol.rank_rel * max;
    sigma.iter().filter(|&&s| s > cutoff).count()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Embeds a real matrix given in row-major order.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> Matrix {
    assert_eq!(entries.len(), rows * cols);
    Matrix::from_row_iterator(rows, cols, entries.iter().map(|&x| c(x, 0.0)))
}

pub fn real_vector(entries: &[f64]) -> Vector {
    Vector::from_iterator(entries.len(), entries.iter().map(|&x| c(x, 0.0)))
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn is_finite(m: &Matrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &Matrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    svd(m).map(|s| s.sigma[0]).unwrap_or_else(|_| m.norm())
}

pub fn svd(m: &Matrix) -> Result<Svd> {
    let (rows, cols) = m.shape();
    if rows.min(cols) == 0 {
        return Ok(Svd {
            u: Matrix::zeros(rows, 0),
            sigma: Vec::new(),
            vh: Matrix::zeros(0, cols),
        });
    }
    if rows < cols {
        let t = jacobi_svd(m.adjoint())?;
        return Ok(Svd {
            u: t.vh.adjoint(),
            sigma: t.sigma,
            vh: t.u.adjoint(),
        });
    }
    jacobi_svd(m.clone())
}

/// One-sided (Hestenes) Jacobi SVD of a matrix with `rows >= cols`.
///
/// Columns are rotated pairwise until mutually orthogonal to working
/// precision; the column norms are then the singular values.
fn jacobi_svd(mut a: Matrix) -> Result<Svd> {
    let (rows, cols) = a.shape();
    let mut v = identity(cols);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = norm_sq_column(&a, p);
                let beta = norm_sq_column(&a, q);
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let cs = 1.0 / t.hypot(1.0);
                let sn = cs * t;
                rotate(&mut a, p, q, phase, cs, sn);
                rotate(&mut v, p, q, phase, cs, sn);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { rows, cols });
    }

    let norms: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u = Matrix::zeros(rows, cols);
    let mut filled = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        if norms[j] > f64::MIN_POSITIVE {
            u.set_column(k, &(a.column(j) / c(norms[j], 0.0)));
        } else {
            filled.push(k);
        }
    }
    complete_orthonormal(&mut u, &filled);
    let vh = Matrix::from_fn(cols, cols, |i, col| v[(col, order[i])].conj());
    Ok(Svd { u, sigma, vh })
}

fn norm_sq_column(a: &Matrix, j: usize) -> f64 {
    a.column(j).iter().map(|z| z.norm_sqr()).sum()
}

/// Rephases column `q` by `phase^*`, then applies the real rotation
/// `(x_p, x_q) -> (c x_p - s x_q, s x_p + c x_q)`.
fn rotate(m: &mut Matrix, p: usize, q: usize, phase: Complex64, cs: f64, sn: f64) {
    let w = phase.conj();
    for r in 0..m.nrows() {
        let xp = m[(r, p)];
        let xq = m[(r, q)] * w;
        m[(r, p)] = xp * cs - xq * sn;
        m[(r, q)] = xp * sn + xq * cs;
    }
}

/// Replaces the listed (zero) columns of `u` by unit vectors orthogonal to
/// every other column.
fn complete_orthonormal(u: &mut Matrix, slots: &[usize]) {
    let rows = u.nrows();
    for &k in slots {
        let residual = |i: usize, u: &Matrix| {
            let mut x = Vector::zeros(rows);
            x[i] = c(1.0, 0.0);
            for _ in 0..2 {
                for j in 0..u.ncols() {
                    let proj = u.column(j).dotc(&x);
                    x -= u.column(j) * proj;
                }
            }
            x
        };
        let best = (0..rows)
            .map(|i| residual(i, u))
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("non-empty column");
        let norm = best.norm();
        u.set_column(k, &(best / c(norm, 0.0)));
    }
}

pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    svd(m).map(|s| s.sigma)
}

pub fn numerical_rank(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    Ok(svd(m)?.rank(tol))
}

/// Moore–Penrose pseudo-inverse with singular values at or below
/// `rank_rel * sigma_max` treated as zero.
pub fn pseudo_inverse(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let (rows, cols) = m.shape();
    let f = svd(m)?;
    let r = f.rank(tol);
    let mut out = Matrix::zeros(cols, rows);
    for i in 0..r {
        let inv = c(1.0 / f.sigma[i], 0.0);
        let v = f.vh.row(i).adjoint();
        let u = f.u.column(i).adjoint();
        out += (v * u) * inv;
    }
    Ok(out)
}

/// Orthonormal basis (n x r) of the numerical column space of `span`.
pub fn orthonormalize(span: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let n = span.nrows();
    if span.ncols() == 0 || n == 0 {
        return Ok(Matrix::zeros(n, 0));
    }
    let f = svd(span)?;
    let r = f.rank(tol);
    Ok(f.u.columns(0, r).into_owned())
}

/// Orthonormal basis of the numerical null space of `m`.
pub fn null_basis(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let n = m.ncols();
    let row_space = orthonormalize(&m.adjoint(), tol)?;
    let complement = identity(n) - &row_space * row_space.adjoint();
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    // The complement projector has singular values 0 or 1 up to round-off,
    // so the cutoff is absolute.
    let f = svd(&complement)?;
    let r = f.sigma.iter().filter(|&&s| s > 0.5).count();
    Ok(f.u.columns(0, r).into_owned())
}

/// Max-abs residual of `B^H B - I`.
pub fn orthonormality_residual(basis: &Matrix) -> f64 {
    let gram = basis.adjoint() * basis - identity(basis.ncols());
    max_abs(&gram)
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Orthogonal projection `B B^H` onto the span of an orthonormal basis.
pub fn projection_of(basis: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let residual = orthonormality_residual(basis);
    if residual > tol.residual_abs {
        return Err(Error::NotOrthonormal { residual });
    }
    Ok(basis * basis.adjoint())
}

fn symmetrize(m: &Matrix) -> Result<Matrix> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    Ok((m + m.adjoint()) * c(0.5, 0.0))
}

/// Hermitian eigendecomposition: ascending eigenvalues and matching
/// eigenvector columns.
pub fn eigh_vectors(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let h = symmetrize(m)?;
    let n = h.nrows();
    if n == 0 {
        return Ok((Vec::new(), Matrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, MAX_ITERATIONS)
        .ok_or(Error::NonConvergence { rows: n, cols: n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, j| eig.eigenvectors[(r, order[j])]);
    Ok((values, vectors))
}

pub fn eigh(m: &Matrix) -> Result<Spectrum> {
    eigh_vectors(m).map(|(eigenvalues, _)| Spectrum { eigenvalues })
}

/// `V diag(g(lambda)) V^H` for a Hermitian input.
fn spectral_apply(values: &[f64], vectors: &Matrix, g: impl Fn(f64) -> f64) -> Matrix {
    let scaled = DVector::from_iterator(values.len(), values.iter().map(|&l| c(g(l), 0.0)));
    let mut left = vectors.clone();
    for (j, s) in scaled.iter().enumerate() {
        left.column_mut(j).scale_mut(s.re);
    }
    let out = left * vectors.adjoint();
    (&out + out.adjoint()) * c(0.5, 0.0)
}

/// Square root (or inverse square root) of a Hermitian PSD matrix.
pub fn sqrt_psd(m: &Matrix, invert: bool, tol: &Tolerance) -> Result<Matrix> {
    let (values, vectors) = eigh_vectors(m)?;
    if invert {
        check_definite(&values, tol)?;
        Ok(spectral_apply(&values, &vectors, |l| 1.0 / l.sqrt()))
    } else {
        Ok(spectral_apply(&values, &vectors, |l| l.max(0.0).sqrt()))
    }
}

/// Inverse of a Hermitian positive definite matrix via its spectrum.
pub fn inverse_pd(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let (values, vectors) = eigh_vectors(m)?;
    check_definite(&values, tol)?;
    Ok(spectral_apply(&values, &vectors, |l| 1.0 / l))
}

fn check_definite(values: &[f64], tol: &Tolerance) -> Result<()> {
    let min = values.first().copied().unwrap_or(0.0);
    let max = values.last().copied().unwrap_or(0.0);
    if !(max > 0.0 && min > tol.rank_rel * max) {
        return Err(Error::Singular { min, max });
    }
    Ok(())
}

/// Sum of squared moduli.
pub fn norm_sq(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}
