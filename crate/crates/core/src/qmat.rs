//! Dense complex linear algebra for multi-qubit density matrices.
//!
//! Qubit parties are numbered from 1, with party 1 carried by the most
//! significant bit of a basis index, so `|b1 b2 ... bn>` sits at row
//! `b1 2^(n-1) + ... + bn`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Relative cutoff used for rank and kernel decisions unless a caller overrides it.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Tolerance for Hermiticity and positivity checks on stored states.
pub const DEFAULT_STATE_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Builds a column vector from real entries.
pub fn real_vector(entries: &[f64]) -> ComplexVector {
    ComplexVector::from_iterator(entries.len(), entries.iter().map(|&x| r(x)))
}

/// Builds a matrix from row-major real entries.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_row_iterator(rows, cols, entries.iter().map(|&x| r(x)))
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn tensor_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    a.kronecker(b)
}

/// Kronecker product of a non-empty list of factors, left to right.
pub fn tensor_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, f| acc.kronecker(f))
}

/// The block-interleaved product that places `p` on the middle qubit.
///
/// Writing `q = ((A, B), (C, D))` in 2×2 blocks, the result is
/// `((p⊗A, p⊗B), (p⊗C, p⊗D))`; for `q = v⊗w` this is `v⊗p⊗w`.
pub fn split_tensor(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    if p.shape() != (2, 2) || q.shape() != (4, 4) {
        return Err(Error::DimensionMismatch(format!(
            "split tensor expects 2x2 and 4x4, got {:?} and {:?}",
            p.shape(),
            q.shape()
        )));
    }
    let mut out = ComplexMatrix::zeros(8, 8);
    for bi in 0..2 {
        for bj in 0..2 {
            let block = q.view((2 * bi, 2 * bj), (2, 2)).into_owned();
            out.view_mut((4 * bi, 4 * bj), (4, 4))
                .copy_from(&p.kronecker(&block));
        }
    }
    Ok(out)
}

/// Returns `n` when `dim == 2^n` with `n ≥ 1`.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `(m + m†) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {:?}",
            m.shape()
        )));
    }
    let dev = hermitian_deviation(m);
    if dev > 1e-8 * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    (values, vectors)
}

pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(m: &ComplexMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

/// Right null vector of `m`: the right singular vector of the smallest singular value.
/// Returns it with that singular value.
pub fn null_vector(m: &ComplexMatrix) -> (ComplexVector, f64) {
    // A wide matrix's thin SVD lacks part of the right null space.
    if m.nrows() < m.ncols() {
        let gram = m.adjoint() * m;
        let (vals, vecs) = eigh(&gram);
        return (vecs.column(0).into_owned(), vals[0].max(0.0).sqrt());
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let (idx, &smallest) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty matrix");
    (v_t.row(idx).adjoint(), smallest)
}

fn split_spectrum(
    m: &ComplexMatrix,
    rel_tol: f64,
) -> Result<(Vec<ComplexVector>, Vec<ComplexVector>)> {
    check_hermitian(m)?;
    let (vals, vecs) = eigh(m);
    let top = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut kernel = Vec::new();
    let mut range = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        let col = vecs.column(i).into_owned();
        if top == 0.0 || v.abs() <= rel_tol * top {
            kernel.push(col);
        } else {
            range.push(col);
        }
    }
    Ok((kernel, range))
}

/// Orthonormal basis of the eigenvectors with `|λ| ≤ rel_tol · max|λ|`.
pub fn kernel_basis(m: &ComplexMatrix, rel_tol: f64) -> Result<Vec<ComplexVector>> {
    Ok(split_spectrum(m, rel_tol)?.0)
}

/// Orthonormal basis of the complement of [`kernel_basis`].
pub fn range_basis(m: &ComplexMatrix, rel_tol: f64) -> Result<Vec<ComplexVector>> {
    Ok(split_spectrum(m, rel_tol)?.1)
}

/// Orthogonal projector onto the span of linearly independent columns.
pub fn projector(basis: &[ComplexVector]) -> Result<ComplexMatrix> {
    let first = basis.first().ok_or(Error::ZeroVector)?;
    if basis.iter().any(|v| v.len() != first.len()) {
        return Err(Error::DimensionMismatch(
            "basis vectors differ in length".into(),
        ));
    }
    let b = ComplexMatrix::from_columns(basis);
    let q = b.qr().q();
    Ok(&q * q.adjoint())
}

/// Frobenius distance between the projectors onto two spans.
pub fn subspace_distance(a: &[ComplexVector], b: &[ComplexVector]) -> Result<f64> {
    Ok((projector(a)? - projector(b)?).norm())
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    check_hermitian(m)?;
    Ok(eigh(m).0[0])
}

/// Partial transpose of a `2^n × 2^n` matrix on the given (1-based) parties.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    qubits: usize,
    parties: &[usize],
) -> Result<ComplexMatrix> {
    let dim = 1usize << qubits;
    if m.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch(format!(
            "expected {dim}x{dim}, got {:?}",
            m.shape()
        )));
    }
    if parties.is_empty() {
        return Err(Error::EmptyPartySet);
    }
    let mut mask = 0usize;
    for &p in parties {
        if p == 0 || p > qubits {
            return Err(Error::PartyOutOfRange { party: p, qubits });
        }
        mask |= 1 << (qubits - p);
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |row, col| {
        let src_row = (row & !mask) | (col & mask);
        let src_col = (col & !mask) | (row & mask);
        m[(src_row, src_col)]
    }))
}

/// A density matrix on `n` qubits, not necessarily trace-normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiQubitState {
    qubits: usize,
    matrix: ComplexMatrix,
    tol: f64,
}

impl MultiQubitState {
    /// Validates and stores `matrix`. The stored matrix is its Hermitian part.
    ///
    /// Checks are relative: Hermitian deviation and negative eigenvalues are
    /// compared against `tol` times the matrix scale.
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "state matrix must be square, got {:?}",
                matrix.shape()
            )));
        }
        let qubits = qubit_count(matrix.nrows())?;
        if matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let scale = max_abs(&matrix).max(1.0);
        let dev = hermitian_deviation(&matrix);
        if dev > tol * scale {
            return Err(Error::NotHermitian(dev));
        }
        let matrix = hermitian_part(&matrix);
        let trace = matrix.trace();
        if trace.re <= 0.0 || trace.im.abs() > tol * scale {
            return Err(Error::NonPositiveTrace(trace.re));
        }
        let min = eigh(&matrix).0[0];
        if min < -tol * trace.re.max(1.0) {
            return Err(Error::NotPsd(min));
        }
        Ok(Self {
            qubits,
            matrix,
            tol,
        })
    }

    /// The pure state `ψψ†`.
    pub fn pure(psi: &ComplexVector, tol: f64) -> Result<Self> {
        Self::new(psi * psi.adjoint(), tol)
    }

    /// Convex mixture `Σ wᵢ ψᵢψᵢ†`.
    pub fn mixture(terms: &[(f64, ComplexVector)], tol: f64) -> Result<Self> {
        let dim = terms.first().map(|t| t.1.len()).ok_or(Error::ZeroVector)?;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (w, psi) in terms {
            m += (psi * psi.adjoint()).scale(*w);
        }
        Self::new(m, tol)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn normalized(&self) -> Self {
        Self {
            qubits: self.qubits,
            matrix: self.matrix.unscale(self.trace()),
            tol: self.tol,
        }
    }

    /// `V ρ V†`, e.g. for a local (SLOCC) operator `V`.
    pub fn conjugate_by(&self, v: &ComplexMatrix) -> Result<Self> {
        if v.shape() != self.matrix.shape() {
            return Err(Error::DimensionMismatch(format!(
                "operator {:?} does not match state {:?}",
                v.shape(),
                self.matrix.shape()
            )));
        }
        Self::new(v * &self.matrix * v.adjoint(), self.tol)
    }

    pub fn partial_transpose(&self, parties: &[usize]) -> Result<ComplexMatrix> {
        partial_transpose_matrix(&self.matrix, self.qubits, parties)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PartialTransposeCheck {
    /// Transposed parties, 1-based.
    pub parties: Vec<usize>,
    pub min_eigenvalue: f64,
    pub rank: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PptReport {
    pub ppt: bool,
    pub checks: Vec<PartialTransposeCheck>,
}

/// All nonempty proper subsets of `{1..n}` as sorted party lists.
pub fn proper_party_subsets(qubits: usize) -> Vec<Vec<usize>> {
    (1..(1usize << qubits) - 1)
        .map(|mask| {
            (1..=qubits)
                .filter(|p| mask & (1 << (p - 1)) != 0)
                .collect()
        })
        .collect()
}

/// Checks positivity of every partial transpose over nonempty proper party
/// subsets; the threshold is `-tol · trace`.
pub fn is_ppt(state: &MultiQubitState, tol: f64) -> Result<PptReport> {
    let trace = state.trace();
    let mut checks = Vec::new();
    for parties in proper_party_subsets(state.qubits()) {
        let pt = state.partial_transpose(&parties)?;
        let min = min_eigenvalue(&pt)?;
        checks.push(PartialTransposeCheck {
            positive: min >= -tol * trace,
            rank: numeric_rank(&pt, DEFAULT_RANK_TOL),
            min_eigenvalue: min,
            parties,
        });
    }
    Ok(PptReport {
        ppt: checks.iter().all(|c| c.positive),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eps() -> ComplexMatrix {
        real_matrix(2, 2, &[0., 1., -1., 0.])
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.shape() == b.shape() && (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn tensor_examples() {
        let i2 = ComplexMatrix::identity(2, 2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4, 4));
        let expected = real_matrix(
            4,
            4,
            &[
                0., 0., 0., 1., 0., 0., -1., 0., 0., -1., 0., 0., 1., 0., 0., 0.,
            ],
        );
        assert_eq!(tensor(&eps(), &eps()), expected);
        let v = tensor_vec(&real_vector(&[1., 0.]), &real_vector(&[0., 1.]));
        assert_eq!(v, real_vector(&[0., 1., 0., 0.]));
    }

    #[test]
    fn split_tensor_identity_and_product_rule() {
        let out = split_tensor(
            &ComplexMatrix::identity(2, 2),
            &ComplexMatrix::identity(4, 4),
        )
        .unwrap();
        assert_eq!(out, ComplexMatrix::identity(8, 8));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = sampling::random_matrix(&mut rng, 2, 2);
            let v = sampling::random_matrix(&mut rng, 2, 2);
            let w = sampling::random_matrix(&mut rng, 2, 2);
            let lhs = split_tensor(&p, &tensor(&v, &w)).unwrap();
            let rhs = tensor_all(&[v, p, w]);
            assert!(close(&lhs, &rhs, 1e-13));
        }
    }

    #[test]
    fn split_tensor_rejects_bad_shapes() {
        let e = split_tensor(
            &ComplexMatrix::identity(4, 4),
            &ComplexMatrix::identity(4, 4),
        );
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn partial_transpose_examples() {
        let mixed =
            MultiQubitState::new(ComplexMatrix::identity(8, 8).unscale(8.0), 1e-12).unwrap();
        assert_eq!(mixed.partial_transpose(&[2]).unwrap(), *mixed.matrix());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sig: Vec<ComplexMatrix> = (0..3)
            .map(|_| sampling::random_density(&mut rng, 2, 2))
            .collect();
        let prod = tensor_all(&sig);
        let pt = partial_transpose_matrix(&prod, 3, &[2]).unwrap();
        let expected = tensor_all(&[sig[0].clone(), sig[1].transpose(), sig[2].clone()]);
        assert!(close(&pt, &expected, 1e-15));

        // full transpose
        let full = partial_transpose_matrix(&prod, 3, &[1, 2, 3]).unwrap();
        assert!(close(&full, &prod.transpose(), 0.0));
    }

    #[test]
    fn partial_transpose_errors() {
        let m = ComplexMatrix::identity(8, 8);
        assert_eq!(
            partial_transpose_matrix(&m, 3, &[4]),
            Err(Error::PartyOutOfRange {
                party: 4,
                qubits: 3
            })
        );
        assert_eq!(
            partial_transpose_matrix(&m, 3, &[]),
            Err(Error::EmptyPartySet)
        );
    }

    #[test]
    fn rank_and_kernel() {
        assert_eq!(
            numeric_rank(&ComplexMatrix::identity(8, 8), DEFAULT_RANK_TOL),
            8
        );
        assert_eq!(
            numeric_rank(&ComplexMatrix::zeros(4, 4), DEFAULT_RANK_TOL),
            0
        );
        assert!(
            kernel_basis(&ComplexMatrix::identity(8, 8), DEFAULT_RANK_TOL)
                .unwrap()
                .is_empty()
        );
        let not_herm = real_matrix(2, 2, &[0., 1., 0., 0.]);
        assert!(matches!(
            kernel_basis(&not_herm, 1e-10),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn ghz_is_not_ppt() {
        let mut ghz = ComplexVector::zeros(8);
        ghz[0] = r(std::f64::consts::FRAC_1_SQRT_2);
        ghz[7] = r(std::f64::consts::FRAC_1_SQRT_2);
        let state = MultiQubitState::pure(&ghz, 1e-12).unwrap();
        let report = is_ppt(&state, 1e-10).unwrap();
        assert!(!report.ppt);
        // single-qubit transposes of GHZ have eigenvalue -1/2
        for check in report.checks.iter().filter(|c| c.parties.len() == 1) {
            assert!((check.min_eigenvalue + 0.5).abs() < 1e-12);
        }
        let mixed =
            MultiQubitState::new(ComplexMatrix::identity(8, 8).unscale(8.0), 1e-12).unwrap();
        assert!(is_ppt(&mixed, 1e-10).unwrap().ppt);
        assert_eq!(proper_party_subsets(3).len(), 6);
    }

    #[test]
    fn state_validation() {
        let bad = real_matrix(2, 2, &[2., 0., 0., -1.]);
        assert!(matches!(
            MultiQubitState::new(bad, 1e-10),
            Err(Error::NotPsd(_))
        ));
        let nonherm = real_matrix(2, 2, &[1., 1., 0., 1.]);
        assert!(matches!(
            MultiQubitState::new(nonherm, 1e-10),
            Err(Error::NotHermitian(_))
        ));
        let three = ComplexMatrix::identity(3, 3);
        assert_eq!(
            MultiQubitState::new(three, 1e-10),
            Err(Error::NotPowerOfTwo(3))
        );
        let mut nan = ComplexMatrix::identity(2, 2);
        nan[(0, 0)] = r(f64::NAN);
        assert_eq!(MultiQubitState::new(nan, 1e-10), Err(Error::NonFinite));
    }

    #[test]
    fn null_vector_of_singular_matrix() {
        let m = real_matrix(3, 3, &[1., 2., 3., 2., 4., 6., 0., 1., 1.]);
        let (v, s) = null_vector(&m);
        assert!(s < 1e-12);
        assert!((&m * &v).norm() < 1e-12);
    }
}
