//! Instance builders and independent oracles shared by the integration tests.
//!
//! Oracles here deliberately avoid the engine's code paths: block matrices
//! are assembled entry by entry from the raw members, and bounds are
//! recomputed from directly summed operators.

#![allow(dead_code)]

use gfusion_core::generators::{random_frame, GeneratorSpec, SplitMix64};
use gfusion_core::kernel::{self, c, Matrix, Vector};
use gfusion_core::{CoefficientFamily, GFusionFrame, Tolerance};

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// `T` assembled column block by column block as `v_j B_j B_j^H Λ_j^H`.
pub fn assembled_synthesis(frame: &GFusionFrame) -> Matrix {
    let n = frame.ambient_dim();
    let total: usize = frame.members().iter().map(|m| m.operator.nrows()).sum();
    let mut t = Matrix::zeros(n, total);
    let mut col = 0;
    for m in frame.members() {
        let b = m.subspace.basis();
        let p = b * b.adjoint();
        let lam_h = m.operator.adjoint();
        for k in 0..lam_h.ncols() {
            for i in 0..n {
                let mut acc = c(0.0, 0.0);
                for l in 0..n {
                    acc += p[(i, l)] * lam_h[(l, k)];
                }
                t[(i, col + k)] = acc * m.weight;
            }
        }
        col += lam_h.ncols();
    }
    t
}

/// `Σ_j v_j^2 ||Λ_j π_{W_j} f||^2`, evaluated member by member.
pub fn frame_sum(frame: &GFusionFrame, f: &Vector) -> f64 {
    frame
        .members()
        .iter()
        .map(|m| {
            let b = m.subspace.basis();
            let g = &m.operator * (b * (b.adjoint() * f));
            m.weight * m.weight * g.norm_squared()
        })
        .sum()
}

pub fn extreme_eigenvalues(h: &Matrix) -> (f64, f64) {
    let s = kernel::eigh(h).unwrap();
    (s.min(), s.max())
}

/// Dimensions `(n, k_j, m_j)` with `Σ min(k_j, m_j) >= n`, so a generic draw
/// is a frame.
pub fn frame_dims(rng: &mut SplitMix64, max_n: usize, max_members: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let pick = |rng: &mut SplitMix64, lo: usize, hi: usize| lo + (rng.uniform() * (hi - lo + 1) as f64) as usize;
    let n = pick(rng, 2, max_n);
    let j = pick(rng, 2, max_members);
    let mut k: Vec<usize> = (0..j).map(|_| pick(rng, 1, n)).collect();
    let mut m: Vec<usize> = (0..j).map(|_| pick(rng, 1, n.min(5))).collect();
    let mut i = 0;
    while k.iter().zip(&m).map(|(a, b)| a.min(b)).sum::<usize>() < n {
        k[i % j] = (k[i % j] + 1).min(n);
        m[i % j] = (m[i % j] + 1).min(n);
        i += 1;
    }
    (n, k, m)
}

/// Seeded frame with dimensions drawn from the seed itself.
pub fn seeded_frame(seed: u64, max_n: usize, max_members: usize) -> GFusionFrame {
    let mut rng = SplitMix64::new(seed ^ 0xA5A5_5A5A_DEAD_BEEF);
    let (n, k, m) = frame_dims(&mut rng, max_n, max_members);
    let spec = GeneratorSpec {
        seed,
        ambient_dim: n,
        member_count: k.len(),
        subspace_dims: k,
        codomain_dims: m,
        weight_range: (0.5, 2.0),
        ensure_frame: true,
    };
    random_frame(&spec).unwrap()
}

/// Seeded family that is deliberately too small to span `C^n`.
pub fn seeded_deficient(seed: u64, max_n: usize) -> GFusionFrame {
    let mut rng = SplitMix64::new(seed ^ 0x1234_5678);
    let n = 3 + (rng.uniform() * (max_n - 2) as f64) as usize;
    let n = n.min(max_n);
    let members = 1 + (rng.uniform() * 2.0) as usize;
    let spec = GeneratorSpec {
        seed,
        ambient_dim: n,
        member_count: members,
        subspace_dims: vec![1; members],
        codomain_dims: vec![1; members],
        weight_range: (0.5, 2.0),
        ensure_frame: false,
    };
    random_frame(&spec).unwrap()
}

pub fn random_coefficients(rng: &mut SplitMix64, frame: &GFusionFrame) -> CoefficientFamily {
    CoefficientFamily::new(
        frame
            .members()
            .iter()
            .map(|m| rng.complex_vector(m.operator.nrows()))
            .collect(),
    )
}

pub fn max_abs(m: &Matrix) -> f64 {
    kernel::max_abs(m)
}

pub fn op_norm(m: &Matrix) -> f64 {
    kernel::op_norm(m)
}
