//! Frames pushed through a bounded operator, pairs of frames with
//! `T_Θ T_Λ^* = I`, and the finite-subset Bessel inequality.

use std::collections::BTreeSet;

use crate::engine::bounds::{bounds_of, is_frame_bounds, sequence_bounds_of, SequenceBounds};
use crate::engine::operators::synthesis_matrix;
use crate::error::{Error, Result};
use crate::kernel::{self, c, identity, Matrix, Tolerance};
use crate::model::{CoefficientFamily, FrameBounds, GFusionFrame, Member, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub struct TransformDiagnostics {
    /// Singular values of `u`, descending.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub sequence: SequenceBounds,
    /// Frobenius norm of `u T_Λ - T_Γ`.
    pub identity_residual: f64,
}

/// `Γ = (u W_j, Λ_j π_{W_j} u^H, v_j)`.
///
/// The operator is stored with the projection folded in so that the
/// synthesis identity `u T_Λ = T_Γ` holds for every `Λ_j`, not only for those
/// already supported on `W_j`. The analysis map of the input frame is the
/// same either way.
pub fn transform_frame(
    frame: &GFusionFrame,
    u: &Matrix,
    tol: &Tolerance,
) -> Result<(GFusionFrame, TransformDiagnostics)> {
    let n = frame.ambient_dim();
    if u.shape() != (n, n) {
        return Err(Error::ShapeMismatch(format!(
            "operator is {}x{}, ambient dimension is {n}",
            u.nrows(),
            u.ncols()
        )));
    }
    if !kernel::is_finite(u) {
        return Err(Error::ShapeMismatch("operator has non-finite entries".into()));
    }
    let bounds = bounds_of(frame.members(), n)?;
    if !is_frame_bounds(&bounds, tol) {
        return Err(Error::NotAFrame {
            lower: bounds.lower,
            upper: bounds.upper,
        });
    }

    let u_adj = u.adjoint();
    let members = frame
        .members()
        .iter()
        .map(|m| {
            Ok(Member::new(
                Subspace::spanned_by(&(u * m.subspace.basis()), tol)?,
                m.restricted_operator() * &u_adj,
                m.weight,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let image = GFusionFrame::from_parts_unchecked(n, members);

    let svd = kernel::svd(u)?;
    let rank = svd.rank(tol);
    let identity_residual = (u * synthesis_matrix(frame) - synthesis_matrix(&image)).norm();
    let scale = 1.0f64.max(svd.sigma.first().copied().unwrap_or(0.0) * bounds.upper.sqrt());
    if identity_residual > tol.residual_abs * scale {
        return Err(Error::Inconsistent {
            what: "u T_Λ differs from T_Γ",
            residual: identity_residual,
        });
    }
    let sequence = sequence_bounds_of(image.members(), n, tol)?;
    Ok((
        image,
        TransformDiagnostics {
            singular_values: svd.sigma,
            rank,
            sequence,
            identity_residual,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDuality {
    /// `‖T_Θ T_Λ^* - I‖_F <= residual_abs`.
    pub is_dual: bool,
    pub product_residual: f64,
    pub lam_bounds: FrameBounds,
    pub theta_bounds: FrameBounds,
}

/// Tests `T_Θ T_Λ^* = I`; when it holds, each family's lower bound must
/// dominate the reciprocal of the other's upper bound.
pub fn pair_duality_check(
    lam: &GFusionFrame,
    theta: &GFusionFrame,
    tol: &Tolerance,
) -> Result<PairDuality> {
    let n = lam.ambient_dim();
    if theta.ambient_dim() != n || lam.codomain_dims() != theta.codomain_dims() {
        return Err(Error::ShapeMismatch(
            "families differ in ambient dimension or codomains".into(),
        ));
    }
    let product = synthesis_matrix(theta) * synthesis_matrix(lam).adjoint();
    let product_residual = (product - identity(n)).norm();
    let is_dual = product_residual <= tol.residual_abs;
    let lam_bounds = bounds_of(lam.members(), n)?;
    let theta_bounds = bounds_of(theta.members(), n)?;
    if is_dual {
        let slack = tol.residual_abs;
        let lam_ok = lam_bounds.lower * theta_bounds.upper >= 1.0 - slack;
        let theta_ok = theta_bounds.lower * lam_bounds.upper >= 1.0 - slack;
        if !(lam_ok && theta_ok) {
            return Err(Error::Inconsistent {
                what: "dual pair violates the reciprocal lower bounds",
                residual: 1.0 - (lam_bounds.lower * theta_bounds.upper)
                    .min(theta_bounds.lower * lam_bounds.upper),
            });
        }
    }
    Ok(PairDuality {
        is_dual,
        product_residual,
        lam_bounds,
        theta_bounds,
    })
}

/// `‖Σ_{j∈I} v_j π_{W_j} Λ_j^H f_j‖^2 <= B Σ_{j∈I} ‖f_j‖^2` for the given
/// index subset, with `B` the optimal upper bound.
pub fn bessel_finite_subset_check(
    frame: &GFusionFrame,
    subset: &[usize],
    coeffs: &CoefficientFamily,
    tol: &Tolerance,
) -> Result<bool> {
    coeffs.check_shape(frame)?;
    let len = frame.len();
    let subset: BTreeSet<usize> = subset.iter().copied().collect();
    if let Some(&bad) = subset.iter().find(|&&j| j >= len) {
        return Err(Error::IndexOutOfRange { index: bad, len });
    }
    let upper = bounds_of(frame.members(), frame.ambient_dim())?.upper;
    let mut sum = kernel::Vector::zeros(frame.ambient_dim());
    let mut energy = 0.0;
    for &j in &subset {
        let m = &frame.members()[j];
        let f = &coeffs.blocks[j];
        sum += m.subspace.projection() * (m.operator.adjoint() * f) * c(m.weight, 0.0);
        energy += kernel::norm_sq(f);
    }
    let rhs = upper * energy;
    Ok(kernel::norm_sq(&sum) <= rhs * (1.0 + tol.residual_abs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{canonical_dual, frame_bounds, frame_operator};
    use crate::fixtures::*;
    use crate::kernel::{max_abs, real_matrix, real_vector};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_transform_keeps_bounds() {
        let frame = two_subspace_c2();
        let (image, diag) = transform_frame(&frame, &identity(2), &tol()).unwrap();
        let a = frame_bounds(&frame, &tol()).unwrap().bounds;
        let b = frame_bounds(&image, &tol()).unwrap().bounds;
        assert!((a.lower - b.lower).abs() < 1e-14 && (a.upper - b.upper).abs() < 1e-14);
        assert_eq!(diag.rank, 2);
        assert!(diag.identity_residual < 1e-14);
    }

    #[test]
    fn diagonal_transform_sandwich() {
        let frame = two_subspace_c2();
        let u = real_matrix(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let (image, _) = transform_frame(&frame, &u, &tol()).unwrap();
        let a = frame_bounds(&frame, &tol()).unwrap().bounds;
        let spectrum = kernel::eigh(&frame_operator(&image)).unwrap();
        assert!(spectrum.min() >= a.lower - 1e-12);
        assert!(spectrum.max() <= 4.0 * a.upper + 1e-12);
        // S_Γ = u S u^H exactly.
        let expected = &u * frame_operator(&frame) * u.adjoint();
        assert!(max_abs(&(frame_operator(&image) - expected)) < 1e-13);
    }

    #[test]
    fn rank_one_transform_gives_sequence() {
        let frame = two_subspace_c2();
        let u = real_matrix(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let (_, diag) = transform_frame(&frame, &u, &tol()).unwrap();
        assert_eq!(diag.rank, 1);
        assert_eq!(diag.sequence.dim, 1);
        assert!(diag.sequence.is_frame_sequence && diag.sequence.bounds.lower > 0.0);
        assert!(diag.identity_residual < 1e-12);
    }

    #[test]
    fn transform_shape_checked() {
        assert!(matches!(
            transform_frame(&two_subspace_c2(), &identity(3), &tol()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn pair_duality_examples() {
        let p = orthonormal_basis(2);
        assert!(pair_duality_check(&p, &p, &tol()).unwrap().is_dual);

        let frame = two_subspace_c2();
        let d = canonical_dual(&frame, &tol()).unwrap();
        assert!(pair_duality_check(&frame, &d.frame, &tol()).unwrap().is_dual);

        let doubled: Vec<Member> = p
            .members()
            .iter()
            .map(|m| Member::new(m.subspace.clone(), m.operator.clone(), 2.0 * m.weight))
            .collect();
        let doubled = GFusionFrame::new(2, doubled, &tol()).unwrap();
        let r = pair_duality_check(&p, &doubled, &tol()).unwrap();
        assert!(!r.is_dual);
        assert!((r.product_residual - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bessel_subset_examples() {
        let frame = two_subspace_c2();
        let coeffs = CoefficientFamily::new(vec![real_vector(&[1.0, 2.0]), real_vector(&[-3.0, 0.5])]);
        assert!(bessel_finite_subset_check(&frame, &[], &coeffs, &tol()).unwrap());
        assert!(bessel_finite_subset_check(&frame, &[1], &coeffs, &tol()).unwrap());
        assert!(bessel_finite_subset_check(&frame, &[0, 1], &coeffs, &tol()).unwrap());
        assert!(matches!(
            bessel_finite_subset_check(&frame, &[2], &coeffs, &tol()),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }
}
