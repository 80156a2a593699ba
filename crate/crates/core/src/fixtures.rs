//! Small closed-form instances used by tests, examples and the CLI goldens.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::kernel::{identity, real_matrix, Tolerance};
use crate::model::{GFusionFrame, Member, Subspace};

fn build(n: usize, members: Vec<Member>) -> GFusionFrame {
    GFusionFrame::new(n, members, &Tolerance::default()).expect("fixture is valid")
}

fn line(n: usize, direction: &[f64]) -> Subspace {
    let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    let unit: Vec<f64> = direction.iter().map(|x| x / norm).collect();
    Subspace::from_basis(real_matrix(n, 1, &unit))
}

fn basis_vector(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

/// `W_j = span{e_j}`, `Λ_j = I`, `v_j = 1`: a Parseval frame.
pub fn orthonormal_basis(n: usize) -> GFusionFrame {
    let members = (0..n)
        .map(|i| Member::new(line(n, &basis_vector(n, i)), identity(n), 1.0))
        .collect();
    build(n, members)
}

/// `W_1 = span{e_1}`, `W_2 = span{(e_1 + e_2)/√2}` in `C^2` with `Λ_j = I`.
/// Its frame operator is `[[1.5, 0.5], [0.5, 0.5]]`.
pub fn two_subspace_c2() -> GFusionFrame {
    build(
        2,
        vec![
            Member::new(line(2, &[1.0, 0.0]), identity(2), 1.0),
            Member::new(line(2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]), identity(2), 1.0),
        ],
    )
}

/// A single line `span{e_1}` in `C^2`: Bessel but not a frame.
pub fn single_line_c2() -> GFusionFrame {
    build(2, vec![Member::new(line(2, &[1.0, 0.0]), identity(2), 1.0)])
}

/// Three lines at 120 degrees in `C^2`, `Λ_j = I`, `v_j = 1`; `S = 3/2 I`.
pub fn equiangular_lines_c2() -> GFusionFrame {
    let members = (0..3)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            Member::new(line(2, &[t.cos(), t.sin()]), identity(2), 1.0)
        })
        .collect();
    build(2, members)
}
