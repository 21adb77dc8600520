//! Seeded random draws used by sweeps, property tests and benches.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmat::{tensor_all, ComplexMatrix, ComplexVector};

/// Independent RNG stream for item `index` of a sweep seeded with `seed`.
pub fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Uniformly distributed unit vector.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexVector {
    let v = ComplexVector::from_fn(dim, |_, _| gaussian(rng));
    v.normalize()
}

/// Random density matrix of the given rank, trace one.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> ComplexMatrix {
    let g = random_matrix(rng, dim, rank);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    m.unscale(tr)
}

/// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let qr = random_matrix(rng, dim, dim).qr();
    let (q, r) = qr.unpack();
    let phases = ComplexMatrix::from_diagonal(&ComplexVector::from_fn(dim, |i, _| {
        let d = r[(i, i)];
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }));
    q * phases
}

/// Draws a unit-determinant 2×2 matrix: Gaussian entries, near-singular draws
/// (|det| < 1e-3) rejected, then scaled by the principal `det^{-1/2}`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    loop {
        let m = Matrix2::from_fn(|_, _| gaussian(rng));
        let det = m.determinant();
        if det.norm() < 1e-3 {
            continue;
        }
        return m / det.sqrt();
    }
}

/// Random invertible 2×2 matrix with condition number at most `max_cond`.
pub fn random_invertible2<R: Rng + ?Sized>(rng: &mut R, max_cond: f64) -> Matrix2<Complex64> {
    loop {
        let m = Matrix2::from_fn(|_, _| gaussian(rng));
        let s = m.singular_values();
        let (hi, lo) = (s.max(), s.min());
        if lo > 0.0 && hi / lo <= max_cond {
            return m;
        }
    }
}

pub fn to_dmatrix(m: &Matrix2<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

/// `V₁ ⊗ ... ⊗ Vₙ` with each factor in SL(2,ℂ).
pub fn random_local_sl<R: Rng + ?Sized>(rng: &mut R, qubits: usize) -> ComplexMatrix {
    let factors: Vec<ComplexMatrix> = (0..qubits).map(|_| to_dmatrix(&random_sl2(rng))).collect();
    tensor_all(&factors)
}

/// Invertible local operator with well-conditioned factors.
pub fn random_local_invertible<R: Rng + ?Sized>(
    rng: &mut R,
    qubits: usize,
    max_cond: f64,
) -> ComplexMatrix {
    let factors: Vec<ComplexMatrix> = (0..qubits)
        .map(|_| to_dmatrix(&random_invertible2(rng, max_cond)))
        .collect();
    tensor_all(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_has_unit_determinant() {
        let mut rng = stream(11, 0);
        for _ in 0..100 {
            let m = random_sl2(&mut rng);
            assert!((m.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = stream(5, 1);
        let u = random_unitary(&mut rng, 4);
        let err = (&u * u.adjoint() - ComplexMatrix::identity(4, 4)).norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = stream(1, 0).random();
        let b: f64 = stream(1, 0).random();
        let c: f64 = stream(1, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
