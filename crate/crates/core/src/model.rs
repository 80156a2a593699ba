//! Domain types for g-fusion frames.
//!
//! A g-fusion frame over `H = C^n` is a finite ordered family of triples
//! `(W_j, Λ_j, v_j)`: a subspace `W_j` stored by an orthonormal basis, an
//! operator `Λ_j: H -> C^{m_j}` and a positive weight. Coefficients live in
//! the direct sum of the codomains, one block per member.

use crate::error::{Error, Result};
use crate::kernel::{self, Matrix, Tolerance, Vector};

/// A subspace of `C^n` given by an orthonormal basis (`n x k`, `k` may be 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Wraps a basis as-is. Orthonormality is checked when the owning frame
    /// is validated.
    pub fn from_basis(basis: Matrix) -> Self {
        Subspace { basis }
    }

    /// Column space of an arbitrary spanning set.
    pub fn spanned_by(span: &Matrix, tol: &Tolerance) -> Result<Self> {
        Ok(Subspace {
            basis: kernel::orthonormalize(span, tol)?,
        })
    }

    pub fn whole(n: usize) -> Self {
        Subspace {
            basis: kernel::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(n, 0),
        }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `π_W = B B^H`.
    pub fn projection(&self) -> Matrix {
        &self.basis * self.basis.adjoint()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub subspace: Subspace,
    /// `m_j x n`.
    pub operator: Matrix,
    pub weight: f64,
}

impl Member {
    pub fn new(subspace: Subspace, operator: Matrix, weight: f64) -> Self {
        Member {
            subspace,
            operator,
            weight,
        }
    }

    pub fn codomain_dim(&self) -> usize {
        self.operator.nrows()
    }

    /// `Λ_j π_{W_j}`, the only combination the frame inequality sees.
    pub fn restricted_operator(&self) -> Matrix {
        &self.operator * self.subspace.projection()
    }

    /// Block row `v_j Λ_j π_{W_j}` of the analysis matrix.
    pub fn analysis_block(&self) -> Matrix {
        self.restricted_operator() * kernel::c(self.weight, 0.0)
    }
}

/// A validated g-fusion frame (or Bessel family) over `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GFusionFrame {
    ambient_dim: usize,
    members: Vec<Member>,
}

impl GFusionFrame {
    pub fn new(ambient_dim: usize, members: Vec<Member>, tol: &Tolerance) -> Result<Self> {
        let frame = GFusionFrame {
            ambient_dim,
            members,
        };
        frame.validate(tol)?;
        Ok(frame)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn codomain_dims(&self) -> Vec<usize> {
        self.members.iter().map(Member::codomain_dim).collect()
    }

    pub fn into_members(self) -> Vec<Member> {
        self.members
    }

    /// Checks every structural invariant; errors name the offending member.
    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        if self.ambient_dim == 0 {
            return Err(Error::ShapeMismatch("ambient_dim must be positive".into()));
        }
        if self.members.is_empty() {
            return Err(Error::NoMembers);
        }
        let n = self.ambient_dim;
        for (j, m) in self.members.iter().enumerate() {
            if !(m.weight.is_finite() && m.weight > 0.0) {
                return Err(Error::NonPositiveWeight {
                    member: j,
                    weight: m.weight,
                });
            }
            let basis = m.subspace.basis();
            if basis.nrows() != n {
                return Err(Error::DimensionMismatch {
                    member: j,
                    what: "subspace column length",
                    expected: n,
                    found: basis.nrows(),
                });
            }
            if basis.ncols() > n {
                return Err(Error::DimensionMismatch {
                    member: j,
                    what: "subspace column count",
                    expected: n,
                    found: basis.ncols(),
                });
            }
            if m.operator.ncols() != n {
                return Err(Error::DimensionMismatch {
                    member: j,
                    what: "operator row length",
                    expected: n,
                    found: m.operator.ncols(),
                });
            }
            if !kernel::is_finite(basis) {
                return Err(Error::NonFinite {
                    member: j,
                    what: "subspace",
                });
            }
            if !kernel::is_finite(&m.operator) {
                return Err(Error::NonFinite {
                    member: j,
                    what: "operator",
                });
            }
            let residual = kernel::orthonormality_residual(basis);
            if residual > tol.residual_abs {
                return Err(Error::NonOrthonormalSubspace {
                    member: j,
                    residual,
                });
            }
        }
        Ok(())
    }

    /// The same family with member `j0` removed; `None` if nothing remains.
    pub fn without_member(&self, j0: usize) -> Option<GFusionFrame> {
        if self.members.len() <= 1 {
            return None;
        }
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != j0)
            .map(|(_, m)| m.clone())
            .collect();
        Some(GFusionFrame {
            ambient_dim: self.ambient_dim,
            members,
        })
    }

    /// Construction path for engine results whose invariants hold by
    /// construction (orthonormalized bases, copied weights).
    pub(crate) fn from_parts_unchecked(ambient_dim: usize, members: Vec<Member>) -> Self {
        GFusionFrame {
            ambient_dim,
            members,
        }
    }
}

/// An element of the direct sum `⊕ C^{m_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFamily {
    pub blocks: Vec<Vector>,
}

impl CoefficientFamily {
    pub fn new(blocks: Vec<Vector>) -> Self {
        CoefficientFamily { blocks }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        CoefficientFamily {
            blocks: dims.iter().map(|&m| Vector::zeros(m)).collect(),
        }
    }

    /// Splits a stacked vector according to block lengths.
    pub fn from_stacked(stacked: &Vector, dims: &[usize]) -> Self {
        let mut offset = 0;
        let blocks = dims
            .iter()
            .map(|&m| {
                let b = stacked.rows(offset, m).into_owned();
                offset += m;
                b
            })
            .collect();
        CoefficientFamily { blocks }
    }

    pub fn stacked(&self) -> Vector {
        let total = self.blocks.iter().map(|b| b.len()).sum();
        Vector::from_iterator(total, self.blocks.iter().flat_map(|b| b.iter().copied()))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// `Σ_j ||f_j||^2`.
    pub fn norm_sq(&self) -> f64 {
        self.blocks.iter().map(kernel::norm_sq).sum()
    }

    /// Inner product in the direct sum, conjugate-linear in `self`.
    pub fn inner(&self, other: &CoefficientFamily) -> num_complex::Complex64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.dotc(b))
            .sum()
    }

    pub fn check_shape(&self, frame: &GFusionFrame) -> Result<()> {
        let expected = frame.codomain_dims();
        let found = self.dims();
        if expected != found {
            return Err(Error::ShapeMismatch(format!(
                "coefficient blocks {found:?} do not match frame codomains {expected:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn zero() -> Self {
        FrameBounds {
            lower: 0.0,
            upper: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameReport {
    pub bounds: FrameBounds,
    pub is_bessel: bool,
    pub is_frame: bool,
    pub is_parseval: bool,
    pub is_gf_complete: bool,
    /// `B / A`; infinite when `A` is numerically zero.
    pub frame_operator_condition: f64,
}
