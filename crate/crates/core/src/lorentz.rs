//! Levi-Civita operators and the Lorentz invariant `Tr(ρᵀ εₙ ρ εₙ)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{
    qubit_count, real_matrix, tensor_all, ComplexMatrix, ComplexVector, MultiQubitState,
};

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct LorentzInvariantValue {
    pub value: f64,
    /// Magnitude of the discarded imaginary part of the trace.
    pub imag_residual: f64,
}

/// `ε^{⊗n}` with `ε = ((0, 1), (-1, 0))`.
pub fn epsilon_n(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("epsilon_n needs n >= 1".into()));
    }
    let eps = real_matrix(2, 2, &[0., 1., -1., 0.]);
    Ok(tensor_all(&vec![eps; n]))
}

/// Lorentz invariant of an arbitrary `2^n × 2^n` matrix (no state validation).
pub fn lorentz_invariant_matrix(m: &ComplexMatrix) -> Result<LorentzInvariantValue> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {:?}",
            m.shape()
        )));
    }
    let eps = epsilon_n(qubit_count(m.nrows())?)?;
    let trace = (m.transpose() * &eps * m * &eps).trace();
    Ok(LorentzInvariantValue {
        value: trace.re,
        imag_residual: trace.im.abs(),
    })
}

/// `I_ρ` of the state as stored (no trace normalization).
pub fn lorentz_invariant(state: &MultiQubitState) -> LorentzInvariantValue {
    lorentz_invariant_matrix(state.matrix()).expect("state dimension is a power of two")
}

/// `ξ₁ᵀ εₙ ξ₂`.
pub fn epsilon_form(xi1: &ComplexVector, xi2: &ComplexVector, n: usize) -> Result<Complex64> {
    let dim = 1usize << n;
    if xi1.len() != dim || xi2.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {} for {n} qubits",
            xi1.len(),
            xi2.len()
        )));
    }
    let eps = epsilon_n(n)?;
    Ok((xi1.transpose() * eps * xi2)[(0, 0)])
}

/// `(-1)^n |ξ₁ᵀ εₙ ξ₂|²`, the invariant pairing of two pure states.
pub fn pairwise_pure_invariant(xi1: &ComplexVector, xi2: &ComplexVector, n: usize) -> Result<f64> {
    let form = epsilon_form(xi1, xi2, n)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * form.norm_sqr())
}

/// Equal-weight mixture of `m` pure states on the circle through `ξ₁` and
/// `εₙ ξ̄₁`, placed at angles `kπ/m`. Its invariant is `-1/2` for every odd
/// `n` and `m ≥ 2`.
///
/// `xi1` defaults to `|0...0⟩` and is normalized before use.
pub fn conjecture_state(
    n: usize,
    m: usize,
    xi1: Option<&ComplexVector>,
) -> Result<MultiQubitState> {
    if n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "conjecture state needs odd n, got {n}"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "conjecture state needs m >= 2, got {m}"
        )));
    }
    let dim = 1usize << n;
    let base = match xi1 {
        Some(v) if v.len() != dim => {
            return Err(Error::DimensionMismatch(format!(
                "ξ₁ has length {}, expected {dim}",
                v.len()
            )))
        }
        Some(v) if v.norm() == 0.0 => return Err(Error::ZeroVector),
        Some(v) => v.normalize(),
        None => {
            let mut v = ComplexVector::zeros(dim);
            v[0] = Complex64::new(1.0, 0.0);
            v
        }
    };
    let eps = epsilon_n(n)?;
    let partner = (&eps * base.conjugate()).normalize();
    // For odd n the partner is automatically orthogonal to ξ₁; remove rounding.
    let overlap = partner.dotc(&base);
    let base = (&base - &partner * overlap).normalize();

    let weight = 1.0 / m as f64;
    let terms: Vec<(f64, ComplexVector)> = (0..m)
        .map(|k| {
            let angle = k as f64 * std::f64::consts::PI / m as f64;
            (
                weight,
                &base * Complex64::new(angle.cos(), 0.0)
                    + &partner * Complex64::new(angle.sin(), 0.0),
            )
        })
        .collect();
    MultiQubitState::mixture(&terms, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{numeric_rank, real_vector, DEFAULT_RANK_TOL};
    use crate::sampling::{random_density, random_local_sl, random_unit_vector, stream};
    use proptest::prelude::*;

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_n(1).unwrap(), real_matrix(2, 2, &[0., 1., -1., 0.]));
        let e2 = epsilon_n(2).unwrap();
        let e1 = epsilon_n(1).unwrap();
        assert_eq!(e2, e1.kronecker(&e1));
        let e3 = epsilon_n(3).unwrap();
        assert_eq!(&e3 * &e3, -ComplexMatrix::identity(8, 8));
        for n in 1..=4 {
            let e = epsilon_n(n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(e.transpose(), e.scale(sign));
        }
        assert!(epsilon_n(0).is_err());
    }

    #[test]
    fn maximally_mixed_invariant() {
        let state =
            MultiQubitState::new(ComplexMatrix::identity(8, 8).unscale(8.0), 1e-12).unwrap();
        let inv = lorentz_invariant(&state);
        assert!((inv.value + 0.125).abs() < 1e-15);
        assert!(inv.imag_residual < 1e-15);
    }

    #[test]
    fn pure_pairings() {
        let phi1 = real_vector(&[1., 0., 0., 1.]).normalize();
        assert!((pairwise_pure_invariant(&phi1, &phi1, 2).unwrap() - 1.0).abs() < 1e-15);
        let mut rng = stream(2, 0);
        for _ in 0..20 {
            let alpha = random_unit_vector(&mut rng, 2);
            let psi = random_unit_vector(&mut rng, 8);
            let xi = alpha.kronecker(&psi);
            assert!(pairwise_pure_invariant(&xi, &xi, 4).unwrap().abs() < 1e-14);
            let odd = random_unit_vector(&mut rng, 8);
            assert!(pairwise_pure_invariant(&odd, &odd, 3).unwrap().abs() < 1e-14);
        }
        assert!(pairwise_pure_invariant(&phi1, &phi1, 3).is_err());
    }

    #[test]
    fn conjecture_state_examples() {
        let one = conjecture_state(1, 2, Some(&real_vector(&[1., 0.]))).unwrap();
        // mixture of |0> and |1>
        assert!((one.matrix() - ComplexMatrix::identity(2, 2).scale(0.5)).norm() < 1e-15);
        assert!((lorentz_invariant(&one).value + 0.5).abs() < 1e-15);
        for m in 2..=12 {
            let s = conjecture_state(3, m, None).unwrap();
            assert!((lorentz_invariant(&s).value + 0.5).abs() < 1e-10, "m = {m}");
            assert!(numeric_rank(s.matrix(), DEFAULT_RANK_TOL) <= 2);
        }
        assert!(conjecture_state(2, 3, None).is_err());
        assert!(conjecture_state(3, 1, None).is_err());
    }

    #[test]
    fn conjecture_state_random_seed_vector() {
        let mut rng = stream(9, 0);
        for m in [2, 5, 9] {
            let xi = random_unit_vector(&mut rng, 32);
            let s = conjecture_state(5, m, Some(&xi)).unwrap();
            assert!((lorentz_invariant(&s).value + 0.5).abs() < 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn slocc_and_transpose_invariance(seed in any::<u64>(), n in 1usize..=3, rank in 1usize..=4) {
            let mut rng = stream(seed, 0);
            let dim = 1 << n;
            let rho = random_density(&mut rng, dim, rank.min(dim));
            let v = random_local_sl(&mut rng, n);
            let before = lorentz_invariant_matrix(&rho).unwrap().value;
            let after = lorentz_invariant_matrix(&(&v * &rho * v.adjoint())).unwrap();
            let bound = 1e-8 * (1.0 + rho.norm().powi(2)) * v.norm().powi(4);
            prop_assert!((after.value - before).abs() <= bound);
            let transposed = lorentz_invariant_matrix(&rho.transpose()).unwrap().value;
            prop_assert!((transposed - before).abs() < 1e-12);
            prop_assert!(after.imag_residual <= 1e-10 * after.value.abs().max(1.0) * v.norm().powi(4));
        }
    }
}
