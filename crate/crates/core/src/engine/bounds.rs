//! Optimal bounds, completeness and frame-sequence diagnostics.

use crate::engine::operators::{analysis_matrix_of, frame_spectrum_of};
use crate::error::{Error, Result};
use crate::kernel::{self, Matrix, Tolerance, Vector};
use crate::model::{FrameBounds, FrameReport, GFusionFrame, Member};

/// Clamped extreme eigenvalues of a frame operator.
pub(crate) fn bounds_from_spectrum(values: &[f64]) -> FrameBounds {
    let upper = values.last().copied().unwrap_or(0.0).max(0.0);
    let lower = values.first().copied().unwrap_or(0.0).clamp(0.0, upper);
    FrameBounds { lower, upper }
}

pub(crate) fn bounds_of(members: &[Member], n: usize) -> Result<FrameBounds> {
    Ok(bounds_from_spectrum(&frame_spectrum_of(members, n)?.values))
}

pub(crate) fn is_frame_bounds(bounds: &FrameBounds, tol: &Tolerance) -> bool {
    bounds.upper > 0.0 && bounds.lower > tol.rank_rel * bounds.upper
}

/// Optimal bounds are the extreme eigenvalues of `S_Λ`, taken as squared
/// extreme singular values of `T_Λ`.
pub fn frame_bounds(frame: &GFusionFrame, tol: &Tolerance) -> Result<FrameReport> {
    let bounds = bounds_of(frame.members(), frame.ambient_dim())?;
    let is_frame = is_frame_bounds(&bounds, tol);
    let parseval_gap = (bounds.lower - 1.0).abs().max((bounds.upper - 1.0).abs());
    let is_parseval = is_frame && parseval_gap <= tol.residual_abs;
    let condition = if is_frame {
        bounds.upper / bounds.lower
    } else {
        f64::INFINITY
    };
    Ok(FrameReport {
        bounds,
        is_bessel: true,
        is_frame,
        is_parseval,
        is_gf_complete: gf_complete(frame, tol)?,
        frame_operator_condition: condition,
    })
}

pub(crate) fn gf_rank_of(members: &[Member], n: usize, tol: &Tolerance) -> Result<usize> {
    kernel::numerical_rank(&analysis_matrix_of(members, n), tol)
}

/// Rank of the stacked analysis matrix `[v_j Λ_j π_{W_j}]_j`.
pub fn gf_rank(frame: &GFusionFrame, tol: &Tolerance) -> Result<usize> {
    gf_rank_of(frame.members(), frame.ambient_dim(), tol)
}

/// Unweighted synthesis pieces `[π_{W_j} Λ_j^H]_j`, side by side.
fn stacked_pieces(frame: &GFusionFrame) -> Matrix {
    let n = frame.ambient_dim();
    let pieces: Vec<Matrix> = frame
        .members()
        .iter()
        .map(|m| m.subspace.projection() * m.operator.adjoint())
        .collect();
    let total = pieces.iter().map(|p| p.ncols()).sum();
    let mut out = Matrix::zeros(n, total);
    let mut col = 0;
    for p in &pieces {
        out.columns_mut(col, p.ncols()).copy_from(p);
        col += p.ncols();
    }
    out
}

/// Whether the pieces `π_{W_j} Λ_j^H C^{m_j}` span `C^n`.
///
/// Decided on the stacked analysis matrix and cross-checked against the
/// unweighted span of the synthesis pieces; positive weights cannot change
/// either rank.
pub fn gf_complete(frame: &GFusionFrame, tol: &Tolerance) -> Result<bool> {
    let n = frame.ambient_dim();
    let rank = gf_rank(frame, tol)?;
    let span_rank = kernel::numerical_rank(&stacked_pieces(frame), tol)?;
    if rank != span_rank {
        return Err(Error::Inconsistent {
            what: "analysis rank differs from span rank",
            residual: rank.abs_diff(span_rank) as f64,
        });
    }
    Ok(rank == n)
}

/// Outcome of the injectivity test for `f -> {v_j Λ_j π_{W_j} f}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Injectivity {
    pub injective: bool,
    /// A unit vector annihilated by every `Λ_j π_{W_j}` when not injective.
    pub witness: Option<Vector>,
}

/// Injectivity of the analysis map, decided by constructing its null space
/// as the complement of the row space.
pub fn injectivity_check(frame: &GFusionFrame, tol: &Tolerance) -> Result<Injectivity> {
    let null = kernel::null_basis(&analysis_matrix_of(frame.members(), frame.ambient_dim()), tol)?;
    if null.ncols() == 0 {
        return Ok(Injectivity {
            injective: true,
            witness: None,
        });
    }
    Ok(Injectivity {
        injective: false,
        witness: Some(null.column(0).into_owned()),
    })
}

/// Bounds of the family on `V = span{π_{W_j} Λ_j^H C^{m_j}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceBounds {
    pub bounds: FrameBounds,
    /// `dim V`.
    pub dim: usize,
    pub is_frame_sequence: bool,
}

pub(crate) fn sequence_bounds_of(
    members: &[Member],
    n: usize,
    tol: &Tolerance,
) -> Result<SequenceBounds> {
    // Same cutoff as `gf_rank`, applied to singular values of `T_Λ`.
    let values = frame_spectrum_of(members, n)?.values;
    let max = values.last().copied().unwrap_or(0.0).sqrt();
    let nonzero: Vec<f64> = values
        .iter()
        .copied()
        .filter(|&l| max > 0.0 && l.sqrt() > tol.rank_rel * max)
        .collect();
    let bounds = match (nonzero.first(), nonzero.last()) {
        (Some(&lower), Some(&upper)) => FrameBounds { lower, upper },
        _ => FrameBounds::zero(),
    };
    Ok(SequenceBounds {
        bounds,
        dim: nonzero.len(),
        is_frame_sequence: bounds.lower > 0.0,
    })
}

/// Frame bounds restricted to the span of the family's pieces.
pub fn range_space_bounds(frame: &GFusionFrame, tol: &Tolerance) -> Result<SequenceBounds> {
    sequence_bounds_of(frame.members(), frame.ambient_dim(), tol)
}
