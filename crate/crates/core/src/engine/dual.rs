//! Reconstruction, Parseval-ization, the canonical dual and minimal-norm
//! coefficients. Everything here inverts `S_Λ` and is guarded against
//! non-frames and ill-conditioned frame operators.

use crate::engine::bounds::{bounds_from_spectrum, is_frame_bounds};
use crate::engine::operators::{check_len, frame_spectrum_of};
use crate::error::{Error, Result};
use crate::kernel::{c, Matrix, Tolerance, Vector};
use crate::model::{CoefficientFamily, GFusionFrame, Member, Subspace};

/// Operations that invert `S_Λ` refuse condition numbers above this.
pub const CONDITION_LIMIT: f64 = 1e12;

/// `S_Λ` together with its spectrum, checked to be safely invertible.
pub(crate) struct InvertibleFrameOperator {
    values: Vec<f64>,
    vectors: Matrix,
}

impl InvertibleFrameOperator {
    pub fn new(frame: &GFusionFrame, tol: &Tolerance) -> Result<Self> {
        let spectrum = frame_spectrum_of(frame.members(), frame.ambient_dim())?;
        let bounds = bounds_from_spectrum(&spectrum.values);
        let vectors = match spectrum.vectors {
            Some(v) if is_frame_bounds(&bounds, tol) => v,
            _ => {
                return Err(Error::NotAFrame {
                    lower: bounds.lower,
                    upper: bounds.upper,
                })
            }
        };
        let cond = bounds.upper / bounds.lower;
        if cond > CONDITION_LIMIT {
            return Err(Error::IllConditioned {
                cond,
                limit: CONDITION_LIMIT,
            });
        }
        Ok(InvertibleFrameOperator {
            values: spectrum.values,
            vectors,
        })
    }

    pub fn condition(&self) -> f64 {
        self.values[self.values.len() - 1] / self.values[0]
    }

    /// `S^{p}` by spectral calculus.
    pub fn power(&self, p: f64) -> Matrix {
        let mut left = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            left.column_mut(j).scale_mut(l.powf(p));
        }
        let out = left * self.vectors.adjoint();
        (&out + out.adjoint()) * c(0.5, 0.0)
    }
}

/// Condition number `B / A` of `S_Λ`, after the same guards every inverting
/// operation applies.
pub fn checked_condition(frame: &GFusionFrame, tol: &Tolerance) -> Result<f64> {
    InvertibleFrameOperator::new(frame, tol).map(|op| op.condition())
}

/// Both orderings of the reconstruction formula.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    /// `Σ_j v_j^2 π_{W_j} Λ_j^H Λ_j π_{W_j} S^{-1} f`.
    pub signal: Vector,
    /// `Σ_j v_j^2 S^{-1} π_{W_j} Λ_j^H Λ_j π_{W_j} f`.
    pub commuted: Vector,
}

fn member_term(m: &Member, x: &Vector) -> Vector {
    let block = m.restricted_operator();
    (block.adjoint() * (&block * x)) * c(m.weight * m.weight, 0.0)
}

pub fn reconstruct(frame: &GFusionFrame, f: &Vector, tol: &Tolerance) -> Result<Reconstruction> {
    check_len(frame, f)?;
    let op = InvertibleFrameOperator::new(frame, tol)?;
    let s_inv = op.power(-1.0);
    let pre = &s_inv * f;
    let mut signal = Vector::zeros(f.len());
    let mut commuted = Vector::zeros(f.len());
    for m in frame.members() {
        signal += member_term(m, &pre);
        commuted += &s_inv * member_term(m, f);
    }
    Ok(Reconstruction { signal, commuted })
}

/// `(u W_j, Λ_j π_{W_j} u, v_j)` for Hermitian invertible `u`.
fn pushed_forward(frame: &GFusionFrame, u: &Matrix, tol: &Tolerance) -> Result<GFusionFrame> {
    let members = frame
        .members()
        .iter()
        .map(|m| {
            Ok(Member::new(
                Subspace::spanned_by(&(u * m.subspace.basis()), tol)?,
                m.restricted_operator() * u,
                m.weight,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GFusionFrame::from_parts_unchecked(frame.ambient_dim(), members))
}

/// The Parseval frame `(S^{-1/2} W_j, Λ_j π_{W_j} S^{-1/2}, v_j)`.
pub fn parsevalize(frame: &GFusionFrame, tol: &Tolerance) -> Result<GFusionFrame> {
    let op = InvertibleFrameOperator::new(frame, tol)?;
    pushed_forward(frame, &op.power(-0.5), tol)
}

/// The canonical dual `(S^{-1} W_j, Λ_j π_{W_j} S^{-1}, v_j)` with `S^{-1}`
/// kept alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFrame {
    pub frame: GFusionFrame,
    pub s_inverse: Matrix,
}

pub fn canonical_dual(frame: &GFusionFrame, tol: &Tolerance) -> Result<DualFrame> {
    let op = InvertibleFrameOperator::new(frame, tol)?;
    let s_inverse = op.power(-1.0);
    Ok(DualFrame {
        frame: pushed_forward(frame, &s_inverse, tol)?,
        s_inverse,
    })
}

fn check_dual(frame: &GFusionFrame, dual: &DualFrame) -> Result<()> {
    let n = frame.ambient_dim();
    let same_shape = dual.frame.ambient_dim() == n
        && dual.s_inverse.shape() == (n, n)
        && dual.frame.codomain_dims() == frame.codomain_dims()
        && frame
            .members()
            .iter()
            .zip(dual.frame.members())
            .all(|(a, b)| a.weight == b.weight);
    if !same_shape {
        return Err(Error::ShapeMismatch("dual does not belong to this frame".into()));
    }
    Ok(())
}

/// Both sums of the mixed reconstruction identity:
/// `Σ v_j^2 π_{W_j} Λ_j^H Λ~_j π_{W~_j} f` and
/// `Σ v_j^2 π_{W~_j} Λ~_j^H Λ_j π_{W_j} f`.
pub fn mixed_reconstruct(
    frame: &GFusionFrame,
    dual: &DualFrame,
    f: &Vector,
) -> Result<(Vector, Vector)> {
    check_len(frame, f)?;
    check_dual(frame, dual)?;
    let n = frame.ambient_dim();
    let mut primal_first = Vector::zeros(n);
    let mut dual_first = Vector::zeros(n);
    for (m, d) in frame.members().iter().zip(dual.frame.members()) {
        let w2 = c(m.weight * m.weight, 0.0);
        let primal = m.restricted_operator();
        let dual_op = d.restricted_operator();
        primal_first += primal.adjoint() * (&dual_op * f) * w2;
        dual_first += dual_op.adjoint() * (&primal * f) * w2;
    }
    Ok((primal_first, dual_first))
}

/// `g_j = v_j Λ~_j π_{W~_j} f`, the coefficients of least total norm among
/// all families the synthesis operator maps to `f`.
pub fn minimal_norm_coefficients(
    frame: &GFusionFrame,
    dual: &DualFrame,
    f: &Vector,
) -> Result<CoefficientFamily> {
    check_len(frame, f)?;
    check_dual(frame, dual)?;
    let blocks = dual
        .frame
        .members()
        .iter()
        .map(|d| d.restricted_operator() * f * c(d.weight, 0.0))
        .collect();
    Ok(CoefficientFamily::new(blocks))
}
