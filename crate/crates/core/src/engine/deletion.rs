//! What happens to a frame when one member is removed.

use crate::engine::bounds::{bounds_of, gf_rank_of, is_frame_bounds};
use crate::engine::dual::canonical_dual;
use crate::error::{Error, Result};
use crate::kernel::{self, c, identity, Matrix, Tolerance};
use crate::model::{FrameBounds, GFusionFrame, Member};

/// Eigenvalue-one detection threshold on `σ_min(M - I)`.
pub const EIGENVALUE_ONE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeletionReport {
    pub removed_index: usize,
    /// `v_{j0} = 1` and some `g ≠ 0` in `C^{m_{j0}}` is fixed by
    /// `Λ~_{j0} π_{W~_{j0}} π_{W_{j0}} Λ_{j0}^H`.
    pub cond1_holds: bool,
    /// `v_{j0} = 1` and some `f ≠ 0` is fixed by
    /// `π_{W_{j0}} Λ_{j0}^H Λ~_{j0} π_{W~_{j0}}`.
    pub cond2_holds: bool,
    /// `I - v_{j0}^2 Λ_{j0} π_{W_{j0}} π_{W~_{j0}} Λ~_{j0}^H` is invertible.
    pub cond3_holds: bool,
    pub remaining_bounds: FrameBounds,
    pub remaining_gf_complete: bool,
    /// Rank of the remaining stacked analysis matrix.
    pub remaining_rank: usize,
    pub remaining_is_frame: bool,
}

fn smallest_singular_value(m: &Matrix) -> Result<f64> {
    if m.is_empty() {
        return Ok(f64::INFINITY);
    }
    let sigma = kernel::singular_values(m)?;
    Ok(sigma.last().copied().unwrap_or(0.0))
}

fn has_eigenvalue_one(m: &Matrix) -> Result<bool> {
    if m.is_empty() {
        return Ok(false);
    }
    let shifted = m - identity(m.nrows());
    Ok(smallest_singular_value(&shifted)? <= EIGENVALUE_ONE_TOL)
}

pub fn delete_member(frame: &GFusionFrame, j0: usize, tol: &Tolerance) -> Result<DeletionReport> {
    let len = frame.len();
    if j0 >= len {
        return Err(Error::IndexOutOfRange { index: j0, len });
    }
    let dual = canonical_dual(frame, tol)?;
    let member = &frame.members()[j0];
    let dual_member = &dual.frame.members()[j0];

    // Λ_{j0} π_{W_{j0}}  and  Λ~_{j0} π_{W~_{j0}}.
    let primal = member.restricted_operator();
    let dual_restricted = dual_member.restricted_operator();
    let unit_weight = (member.weight - 1.0).abs() <= tol.residual_abs;

    let m1 = &dual_restricted * member.subspace.projection() * member.operator.adjoint();
    let m2 = member.subspace.projection() * member.operator.adjoint() * &dual_restricted;
    let cond1_holds = unit_weight && has_eigenvalue_one(&m1)?;
    let cond2_holds = unit_weight && has_eigenvalue_one(&m2)?;

    let coupling = &primal
        * dual_member.subspace.projection()
        * dual_member.operator.adjoint()
        * c(member.weight * member.weight, 0.0);
    let m3 = identity(member.codomain_dim()) - coupling;
    let cond3_holds = smallest_singular_value(&m3)? > tol.rank_rel;

    let n = frame.ambient_dim();
    let rest: Vec<Member> = frame
        .members()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != j0)
        .map(|(_, m)| m.clone())
        .collect();
    let remaining_bounds = bounds_of(&rest, n)?;
    let remaining_rank = gf_rank_of(&rest, n, tol)?;
    Ok(DeletionReport {
        removed_index: j0,
        cond1_holds,
        cond2_holds,
        cond3_holds,
        remaining_bounds,
        remaining_gf_complete: remaining_rank == n,
        remaining_rank,
        remaining_is_frame: is_frame_bounds(&remaining_bounds, tol),
    })
}
