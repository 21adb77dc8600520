//! Reduction of four entangled two-qubit vectors to the Bell basis.

use std::collections::VecDeque;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use super::Mat2;
use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, ComplexVector};

/// Relative tolerance for the pairwise `ψᵢᵀ(ε⊗ε)ψⱼ = 0` condition.
pub const DEFAULT_BELL_TOL: f64 = 1e-8;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `F(x, y, z, w) = ((x, y), (z, w))`.
pub fn matrixize(psi: &ComplexVector) -> Result<Mat2> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 4-vector, got length {}",
            psi.len()
        )));
    }
    Ok(Mat2::new(psi[0], psi[1], psi[2], psi[3]))
}

/// Inverse of [`matrixize`].
pub fn vectorize(m: &Mat2) -> ComplexVector {
    ComplexVector::from_vec(vec![m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
}

/// The unnormalized Bell vectors as columns:
/// `(1,0,0,1)`, `(1,0,0,-1)`, `(0,1,1,0)`, `(0,1,-1,0)`.
pub fn bell_matrix() -> Matrix4<Complex64> {
    Matrix4::from_row_slice(&[
        ONE, ONE, ZERO, ZERO, //
        ZERO, ZERO, ONE, ONE, //
        ZERO, ZERO, ONE, -ONE, //
        ONE, -ONE, ZERO, ZERO,
    ])
}

/// The four unnormalized Bell vectors.
pub fn bell_vectors() -> [ComplexVector; 4] {
    let b = bell_matrix();
    std::array::from_fn(|k| ComplexVector::from_iterator(4, b.column(k).iter().copied()))
}

/// `ψᵀ (ε⊗ε) φ = det-like pairing`, computed as `x₁w₂ − y₁z₂ − z₁y₂ + w₁x₂`.
fn epsilon_pairing(a: &ComplexVector, b: &ComplexVector) -> Complex64 {
    a[0] * b[3] - a[1] * b[2] - a[2] * b[1] + a[3] * b[0]
}

/// Worst relative violation of `ψᵢᵀ(ε⊗ε)ψⱼ = 0` over `i < j`, with the offending pair.
pub fn epsilon_pairing_residual(psis: &[ComplexVector]) -> (usize, usize, f64) {
    let mut worst = (0, 0, 0.0f64);
    for i in 0..psis.len() {
        for j in i + 1..psis.len() {
            let rel =
                epsilon_pairing(&psis[i], &psis[j]).norm() / (psis[i].norm() * psis[j].norm());
            if rel > worst.2 {
                worst = (i, j, rel);
            }
        }
    }
    worst
}

/// Local operators `P`, `Q` and column scales `D` with
/// `(P⊗Q)(ψ₁, ψ₂, ψ₃, ψ₄) D = bell_matrix()`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellTransform {
    pub p: Mat2,
    pub q: Mat2,
    pub d: [Complex64; 4],
    /// Largest entrywise deviation of the mapped columns from the Bell matrix.
    pub residual: f64,
}

impl BellTransform {
    pub fn operator(&self) -> ComplexMatrix {
        let p = ComplexMatrix::from_fn(2, 2, |i, j| self.p[(i, j)]);
        let q = ComplexMatrix::from_fn(2, 2, |i, j| self.q[(i, j)]);
        p.kronecker(&q)
    }

    pub fn apply(&self, psis: &[ComplexVector]) -> Vec<ComplexVector> {
        let w = self.operator();
        psis.iter()
            .zip(self.d)
            .map(|(psi, l)| &w * psi * l)
            .collect()
    }
}

/// Eigen-decomposition of a 2×2 matrix, rejecting (near-)repeated eigenvalues.
/// Returns the eigenvalues and the matrix of eigenvector columns.
fn diagonalize2(m: &Mat2) -> Result<([Complex64; 2], Mat2)> {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let disc = (half_tr * half_tr - m.determinant()).sqrt();
    let (l1, l2) = (half_tr + disc, half_tr - disc);
    let scale = l1.norm().max(l2.norm()).max(m.camax());
    if (l1 - l2).norm() <= 1e-10 * scale {
        return Err(Error::Degenerate(
            "second normalized vector is not diagonalizable with distinct eigenvalues".into(),
        ));
    }
    let eigvec = |l: Complex64| {
        let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let u = nalgebra::Vector2::new(b, l - a);
        let v = nalgebra::Vector2::new(l - d, c);
        if u.norm() >= v.norm() {
            u
        } else {
            v
        }
    };
    let (v1, v2) = (eigvec(l1), eigvec(l2));
    Ok(([l1, l2], Mat2::new(v1[0], v2[0], v1[1], v2[1])))
}

/// Finds the local transform sending four entangled vectors with vanishing
/// pairwise `ψᵢᵀ(ε⊗ε)ψⱼ` onto the Bell vectors.
///
/// Steps: `Aᵢ = F(ψᵢ)`; left-multiply by `A₁⁻¹` so the first becomes the
/// identity; diagonalize the second by a similarity; the vanishing pairings
/// then force the third and fourth to be off-diagonal `b(0,1;±s,0)`; finally
/// `diag(√s,1)` and `diag(1,√s)` turn all four into Bell matrices.
pub fn bell_transform(psis: &[ComplexVector], tol: f64) -> Result<BellTransform> {
    if psis.len() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected four vectors, got {}",
            psis.len()
        )));
    }
    let a: Vec<Mat2> = psis.iter().map(matrixize).collect::<Result<_>>()?;
    for (k, (m, psi)) in a.iter().zip(psis).enumerate() {
        if m.determinant().norm() <= 1e-10 * psi.norm_squared() {
            return Err(Error::NotEntangled(k));
        }
    }
    let (i, j, residual) = epsilon_pairing_residual(psis);
    if residual > tol {
        return Err(Error::PairwiseCondition { i, j, residual });
    }

    let p0 = a[0].try_inverse().ok_or(Error::NotEntangled(0))?;
    let a1: Vec<Mat2> = a.iter().map(|m| p0 * m).collect();
    let (eig, s_mat) = diagonalize2(&a1[1])?;
    let p1 = s_mat
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("eigenvector matrix is singular".into()))?;
    let a2: Vec<Mat2> = a1.iter().map(|m| p1 * m * s_mat).collect();

    let s1 = (eig[0] - eig[1]) * 0.5;
    let (b3, c3, b4) = (a2[2][(0, 1)], a2[2][(1, 0)], a2[3][(0, 1)]);
    if b3.norm() <= 1e-12 * a2[2].camax() || b4.norm() <= 1e-12 * a2[3].camax() {
        return Err(Error::Degenerate(
            "third or fourth vector has a vanishing off-diagonal entry".into(),
        ));
    }
    let s = c3 / b3;
    let root = s.sqrt();
    let p2 = Mat2::new(root, ZERO, ZERO, ONE);
    let q2 = Mat2::new(ONE, ZERO, ZERO, root);

    let p = p2 * p1 * p0;
    let q = (s_mat * q2).transpose();
    let d = [
        ONE / root,
        ONE / (s1 * root),
        ONE / (b3 * s),
        ONE / (b4 * s),
    ];

    let mut out = BellTransform {
        p,
        q,
        d,
        residual: 0.0,
    };
    let bell = bell_vectors();
    out.residual = out
        .apply(psis)
        .iter()
        .zip(&bell)
        .map(|(x, y)| (x - y).camax())
        .fold(0.0, f64::max);
    Ok(out)
}

/// A product unitary permuting the normalized Bell states up to phases:
/// `(P⊗Q) φⱼ = e^{iβⱼ} φ_{σ(j)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellPermutation {
    pub sigma: [usize; 4],
    pub p: Mat2,
    pub q: Mat2,
    /// Phases in `[0, 2π)`.
    pub phases: [f64; 4],
}

fn kron2(p: &Mat2, q: &Mat2) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| p[(r / 2, c / 2)] * q[(r % 2, c % 2)])
}

fn compose(g: [usize; 4], pi: [usize; 4]) -> [usize; 4] {
    std::array::from_fn(|j| g[pi[j]])
}

/// Realizations of the adjacent transpositions `(0 1)`, `(1 2)`, `(2 3)`.
fn generators() -> [([usize; 4], Mat2, Mat2); 3] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = Mat2::new(ONE * h, ONE * h, ONE * h, -ONE * h);
    let s = Mat2::new(ONE, ZERO, ZERO, I);
    let s_bar = Mat2::new(ONE, ZERO, ZERO, -I);
    let z = Mat2::new(ONE, ZERO, ZERO, -ONE);
    [
        // Z⊗I swaps (0 1)(2 3); composing with S⊗S̄ undoes the (2 3) part
        ([1, 0, 2, 3], z * s, s_bar),
        ([0, 2, 1, 3], hadamard, hadamard),
        ([0, 1, 3, 2], s, s_bar),
    ]
}

fn validate_permutation(sigma: [usize; 4]) -> Result<()> {
    let mut seen = [false; 4];
    for &k in &sigma {
        if k >= 4 || seen[k] {
            return Err(Error::InvalidParameter(format!(
                "{sigma:?} is not a permutation of 0..4"
            )));
        }
        seen[k] = true;
    }
    Ok(())
}

/// Local unitary realizing the (0-based) permutation `sigma` of the Bell states,
/// found by composing the adjacent-transposition generators.
pub fn bell_permutation_unitary(sigma: [usize; 4]) -> Result<BellPermutation> {
    validate_permutation(sigma)?;
    let mut seen = vec![([0, 1, 2, 3], Mat2::identity(), Mat2::identity())];
    let mut queue = VecDeque::from([0usize]);
    let found = loop {
        let Some(idx) = queue.pop_front() else {
            unreachable!("adjacent transpositions generate S4");
        };
        let (pi, p, q) = seen[idx];
        if pi == sigma {
            break (p, q);
        }
        for (g, gp, gq) in generators() {
            let next = compose(g, pi);
            if !seen.iter().any(|e| e.0 == next) {
                seen.push((next, gp * p, gq * q));
                queue.push_back(seen.len() - 1);
            }
        }
    };
    let (p, q) = found;
    let u = kron2(&p, &q);
    let bell = bell_matrix() * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let phases = std::array::from_fn(|j| {
        let image: Vector4<Complex64> = u * bell.column(j);
        let overlap = bell.column(sigma[j]).dotc(&image);
        overlap.arg().rem_euclid(std::f64::consts::TAU)
    });
    Ok(BellPermutation {
        sigma,
        p,
        q,
        phases,
    })
}
