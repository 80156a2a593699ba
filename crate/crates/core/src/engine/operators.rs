//! Synthesis, analysis and frame operators.
//!
//! The member-wise routines here never assemble the block matrices; the
//! assembled forms are exposed separately so the two routes can check each
//! other.

use crate::error::{Error, Result};
use crate::kernel::{self, c, Matrix, Vector};
use crate::model::{CoefficientFamily, GFusionFrame, Member};

/// `Σ_j v_j π_{W_j} Λ_j^H f_j`.
pub fn synthesis(frame: &GFusionFrame, coeffs: &CoefficientFamily) -> Result<Vector> {
    coeffs.check_shape(frame)?;
    let mut out = Vector::zeros(frame.ambient_dim());
    for (m, f) in frame.members().iter().zip(&coeffs.blocks) {
        let lifted = m.operator.adjoint() * f;
        let projected = m.subspace.basis() * (m.subspace.basis().adjoint() * lifted);
        out += projected * c(m.weight, 0.0);
    }
    Ok(out)
}

/// `{v_j Λ_j π_{W_j} f}_j`.
pub fn analysis(frame: &GFusionFrame, f: &Vector) -> Result<CoefficientFamily> {
    check_len(frame, f)?;
    let blocks = frame
        .members()
        .iter()
        .map(|m| {
            let projected = m.subspace.basis() * (m.subspace.basis().adjoint() * f);
            (&m.operator * projected) * c(m.weight, 0.0)
        })
        .collect();
    Ok(CoefficientFamily::new(blocks))
}

pub(crate) fn check_len(frame: &GFusionFrame, f: &Vector) -> Result<()> {
    if f.len() != frame.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} for ambient dimension {}",
            f.len(),
            frame.ambient_dim()
        )));
    }
    Ok(())
}

/// Frame operator of an arbitrary (possibly empty) member list.
pub(crate) fn frame_operator_of(members: &[Member], n: usize) -> Matrix {
    let mut s = Matrix::zeros(n, n);
    for m in members {
        let block = m.restricted_operator();
        s += (block.adjoint() * &block) * c(m.weight * m.weight, 0.0);
    }
    (&s + s.adjoint()) * c(0.5, 0.0)
}

/// `S_Λ = Σ_j v_j^2 π_{W_j} Λ_j^H Λ_j π_{W_j}`.
pub fn frame_operator(frame: &GFusionFrame) -> Matrix {
    frame_operator_of(frame.members(), frame.ambient_dim())
}

/// Spectrum of `S_Λ = T_Λ T_Λ^*` read off the SVD of `T_Λ`.
///
/// Squaring singular values keeps small eigenvalues accurate to about
/// `sqrt(cond) * eps` relative, where factoring the assembled `S_Λ` only
/// manages `cond * eps`.
pub(crate) struct FrameSpectrum {
    /// Ascending, `n` entries.
    pub values: Vec<f64>,
    /// Matching orthonormal eigenvectors; absent when `T_Λ` has fewer than
    /// `n` columns (the family cannot then be a frame).
    pub vectors: Option<Matrix>,
}

pub(crate) fn frame_spectrum_of(members: &[Member], n: usize) -> Result<FrameSpectrum> {
    let t = analysis_matrix_of(members, n).adjoint();
    let f = kernel::svd(&t)?;
    let k = f.sigma.len();
    let mut values = vec![0.0; n - k];
    values.extend(f.sigma.iter().rev().map(|s| s * s));
    let vectors = (k == n).then(|| {
        Matrix::from_fn(n, n, |r, j| f.u[(r, n - 1 - j)])
    });
    Ok(FrameSpectrum { values, vectors })
}

pub(crate) fn analysis_matrix_of(members: &[Member], n: usize) -> Matrix {
    let total: usize = members.iter().map(Member::codomain_dim).sum();
    let mut out = Matrix::zeros(total, n);
    let mut row = 0;
    for m in members {
        let block = m.analysis_block();
        out.rows_mut(row, block.nrows()).copy_from(&block);
        row += block.nrows();
    }
    out
}

/// Stacked block rows `[v_j Λ_j π_{W_j}]_j`, the matrix of `T_Λ^*`.
pub fn analysis_matrix(frame: &GFusionFrame) -> Matrix {
    analysis_matrix_of(frame.members(), frame.ambient_dim())
}

/// Block columns `[v_j π_{W_j} Λ_j^H]_j`, the matrix of `T_Λ`.
pub fn synthesis_matrix(frame: &GFusionFrame) -> Matrix {
    let n = frame.ambient_dim();
    let total: usize = frame.codomain_dims().iter().sum();
    let mut out = Matrix::zeros(n, total);
    let mut col = 0;
    for m in frame.members() {
        let block = m.subspace.projection() * m.operator.adjoint() * c(m.weight, 0.0);
        out.columns_mut(col, block.ncols()).copy_from(&block);
        col += block.ncols();
    }
    out
}
