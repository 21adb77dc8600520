//! Product vectors inside four-dimensional subspaces of three qubits.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly;
use crate::qmat::{eigh, null_vector, singular_values, tensor_vec, ComplexMatrix, ComplexVector};
use crate::vecgeom::{det2, Vec2};

/// Relative residual above which a root of the determinant is discarded.
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-6;

/// Relative threshold on `|det F(ψ)| / ‖ψ‖²` for a two-qubit vector to count as a product.
pub const DEFAULT_TRIPARTITE_TOL: f64 = 1e-8;

/// Relative threshold on `|det(x, y)| / ‖x‖‖y‖` for general position.
pub const GENERAL_POSITION_TOL: f64 = 1e-8;

const ROOT_MERGE_TOL: f64 = 1e-7;
const LEADING_COEFF_TOL: f64 = 1e-10;

/// A bipartition of three qubits into one local party and a two-qubit remainder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Partition {
    #[serde(rename = "A|BC")]
    ABC,
    #[serde(rename = "B|AC")]
    BAC,
    #[serde(rename = "C|AB")]
    CAB,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::ABC, Partition::BAC, Partition::CAB];

    /// 1-based party carrying the local factor.
    pub fn local_party(self) -> usize {
        match self {
            Self::ABC => 1,
            Self::BAC => 2,
            Self::CAB => 3,
        }
    }

    /// The two remaining parties in increasing order.
    pub fn remote_parties(self) -> [usize; 2] {
        match self {
            Self::ABC => [2, 3],
            Self::BAC => [1, 3],
            Self::CAB => [1, 2],
        }
    }

    /// Basis index in the original ordering for the index `(local, remote₁, remote₂)`.
    fn original_index(self, reordered: usize) -> usize {
        let bits = [(reordered >> 2) & 1, (reordered >> 1) & 1, reordered & 1];
        let parties = [
            self.local_party(),
            self.remote_parties()[0],
            self.remote_parties()[1],
        ];
        parties
            .iter()
            .zip(bits)
            .fold(0, |acc, (&p, b)| acc | (b << (3 - p)))
    }

    /// Reorders an 8-vector so the local party becomes the most significant qubit.
    pub fn to_local_first(self, v: &ComplexVector) -> ComplexVector {
        ComplexVector::from_fn(8, |i, _| v[self.original_index(i)])
    }

    /// Inverse of [`Partition::to_local_first`].
    pub fn from_local_first(self, v: &ComplexVector) -> ComplexVector {
        let mut out = ComplexVector::zeros(8);
        for i in 0..8 {
            out[self.original_index(i)] = v[i];
        }
        out
    }
}

fn ser_vector<S: Serializer>(v: &ComplexVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

fn ser_factors<S: Serializer>(
    v: &Option<[ComplexVector; 3]>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(f) => s.collect_seq(
            f.iter()
                .map(|x| x.iter().copied().collect::<Vec<Complex64>>()),
        ),
    }
}

/// A product vector `local ⊗ remote` (under `partition`) in a subspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductVectorRecord {
    /// Unit vector in the original qubit ordering.
    #[serde(serialize_with = "ser_vector")]
    pub vector: ComplexVector,
    pub partition: Partition,
    /// Unit vector on the local party; `(s, 1)` direction or `(1, 0)`.
    #[serde(serialize_with = "ser_vector")]
    pub local_factor: ComplexVector,
    /// Unit vector on the remote parties (ordered as in [`Partition::remote_parties`]).
    #[serde(serialize_with = "ser_vector")]
    pub remote_factor: ComplexVector,
    /// Single-qubit factors for parties 1, 2, 3 when the vector is fully product.
    #[serde(serialize_with = "ser_factors")]
    pub tripartite_factors: Option<[ComplexVector; 3]>,
    /// Distance of `vector` from the subspace.
    pub residual: f64,
}

impl ProductVectorRecord {
    /// Affine coordinate `s` of the local factor `∝ (s, 1)`; `None` for `(1, 0)`.
    pub fn local_parameter(&self) -> Option<Complex64> {
        let (a0, a1) = (self.local_factor[0], self.local_factor[1]);
        if a1.norm() <= 1e-14 * a0.norm() {
            None
        } else {
            Some(a0 / a1)
        }
    }

    pub fn local_vec2(&self) -> Vec2 {
        Vec2::new(self.local_factor[0], self.local_factor[1])
    }
}

fn orthonormal_span(basis: &[ComplexVector]) -> Result<ComplexMatrix> {
    if basis.len() != 4 {
        return Err(Error::SubspaceDimension {
            expected: 4,
            found: basis.len(),
        });
    }
    if let Some(v) = basis.iter().find(|v| v.len() != 8) {
        return Err(Error::DimensionMismatch(format!(
            "basis vector of length {}, expected 8",
            v.len()
        )));
    }
    let b = ComplexMatrix::from_columns(basis);
    let s = singular_values(&b);
    let rank = s.iter().filter(|&&x| x > 1e-10 * s[0]).count();
    if rank != 4 {
        return Err(Error::SubspaceDimension {
            expected: 4,
            found: rank,
        });
    }
    let svd = b.svd(true, false);
    Ok(svd.u.expect("u requested"))
}

/// `F(ψ)` singular test: the factors `(b, c)` of a two-qubit product vector.
fn two_qubit_factors(psi: &ComplexVector, tol: f64) -> Option<(ComplexVector, ComplexVector)> {
    let m = ComplexMatrix::from_row_slice(2, 2, psi.as_slice());
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    if det.norm() > tol * psi.norm_squared() {
        return None;
    }
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("2x2");
    let b = u.column(k).into_owned() * Complex64::new(svd.singular_values[k], 0.0);
    let c = v_t.row(k).transpose();
    Some((b, c))
}

/// Factors `(a, b, c)` with `‖v − a⊗b⊗c‖ ≤ tol‖v‖`, if they exist.
pub fn is_tripartite_product(v: &ComplexVector, tol: f64) -> Result<Option<[ComplexVector; 3]>> {
    if v.len() != 8 {
        return Err(Error::DimensionMismatch(format!(
            "expected an 8-vector, got length {}",
            v.len()
        )));
    }
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let m = ComplexMatrix::from_row_slice(2, 4, v.as_slice());
    let svd = m.svd(true, true);
    let s = &svd.singular_values;
    let (k, small) = if s[0] >= s[1] { (0, s[1]) } else { (1, s[0]) };
    if small > tol * norm {
        return Ok(None);
    }
    let a = svd.u.expect("u").column(k).into_owned();
    let rest = svd.v_t.expect("v_t").row(k).transpose() * Complex64::new(s[k], 0.0);
    let Some((b, c)) = two_qubit_factors(&rest, tol) else {
        return Ok(None);
    };
    let rebuilt = tensor_vec(&tensor_vec(&a, &b), &c);
    if (v - &rebuilt).norm() > tol * norm {
        return Ok(None);
    }
    Ok(Some([a, b, c]))
}

fn make_record(
    partition: Partition,
    local: ComplexVector,
    remote: ComplexVector,
    complement: &ComplexMatrix,
) -> ProductVectorRecord {
    let local = local.normalize();
    let remote = remote.normalize();
    let reordered = tensor_vec(&local, &remote);
    let vector = partition.from_local_first(&reordered);
    let residual = (complement.adjoint() * &reordered).norm();
    let tripartite_factors = two_qubit_factors(&remote, DEFAULT_TRIPARTITE_TOL).map(|(b, c)| {
        let mut f = [
            ComplexVector::zeros(2),
            ComplexVector::zeros(2),
            ComplexVector::zeros(2),
        ];
        f[partition.local_party() - 1] = local.clone();
        let [r1, r2] = partition.remote_parties();
        f[r1 - 1] = b.normalize();
        f[r2 - 1] = c.normalize();
        f
    });
    ProductVectorRecord {
        vector,
        partition,
        local_factor: local,
        remote_factor: remote,
        tripartite_factors,
        residual,
    }
}

/// All product vectors `a ⊗ ψ` (up to scalar) in the span of four linearly
/// independent 8-vectors, for the given bipartition.
///
/// With `r₁..r₄` spanning the orthogonal complement and split into blocks
/// `rᵢ = (uᵢ; wᵢ)` along the local qubit, `(s, 1) ⊗ ψ` lies in the span iff
/// `(s U + W) ψ = 0` where `U`, `W` have rows `uᵢ†`, `wᵢ†`. The quartic
/// `det(s U + W)` gives the admissible `s`; `a = (1, 0)` is possible iff `U`
/// is singular.
pub fn bipartite_products_in_subspace(
    basis: &[ComplexVector],
    partition: Partition,
) -> Result<Vec<ProductVectorRecord>> {
    let span = orthonormal_span(basis)?;
    let reordered: Vec<ComplexVector> = span
        .column_iter()
        .map(|c| partition.to_local_first(&c.into_owned()))
        .collect();
    let q = ComplexMatrix::from_columns(&reordered);
    let projector = ComplexMatrix::identity(8, 8) - &q * q.adjoint();
    let (vals, vecs) = eigh(&projector);
    let complement = ComplexMatrix::from_columns(
        &(0..8)
            .filter(|&i| vals[i] > 0.5)
            .map(|i| vecs.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    let u = complement.rows(0, 4).adjoint();
    let w = complement.rows(4, 4).adjoint();
    let pencil = |s: Complex64| &u * s + &w;

    let radius = (w.norm() / u.norm()).clamp(1e-3, 1e3);
    let coeffs = poly::interpolate_on_circle(4, radius, |s| pencil(s).determinant());
    let top = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let reference = (u.norm() * radius + w.norm()).powi(4);
    if top <= 1e-12 * reference {
        return Err(Error::ContinuumOfProducts);
    }
    let degree = poly::effective_degree(&coeffs, LEADING_COEFF_TOL).unwrap_or(0);
    let roots = poly::merge_close(poly::roots(&coeffs[..=degree]), ROOT_MERGE_TOL);

    let scale = u.norm().max(w.norm());
    let mut records = Vec::new();
    for s in roots {
        let m = pencil(s);
        let sv = singular_values(&m);
        if sv[2] <= 1e-8 * scale * (1.0 + s.norm()) {
            return Err(Error::ContinuumOfProducts);
        }
        let (psi, _) = null_vector(&m);
        let local = ComplexVector::from_vec(vec![s, Complex64::new(1.0, 0.0)]);
        records.push(make_record(partition, local, psi, &complement));
    }
    if degree < 4 {
        let sv = singular_values(&u);
        if sv[3] <= 1e-6 * sv[0] {
            if sv[2] <= 1e-8 * sv[0] {
                return Err(Error::ContinuumOfProducts);
            }
            let (psi, _) = null_vector(&u);
            let local =
                ComplexVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
            records.push(make_record(partition, local, psi, &complement));
        }
    }
    records.retain(|r| r.residual <= DEFAULT_PRODUCT_TOL);
    Ok(records)
}

/// Whether, on every party, the local factors of the four records are pairwise independent.
pub fn general_position(records: &[ProductVectorRecord]) -> Result<bool> {
    if records.len() != 4 {
        return Err(Error::ProductCount {
            expected: 4,
            found: records.len(),
        });
    }
    let factors: Vec<&[ComplexVector; 3]> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.tripartite_factors
                .as_ref()
                .ok_or(Error::MissingTripartiteFactors(i))
        })
        .collect::<Result<_>>()?;
    for party in 0..3 {
        for i in 0..4 {
            for j in i + 1..4 {
                let (a, b) = (&factors[i][party], &factors[j][party]);
                let ratio = det2(&Vec2::new(a[0], a[1]), &Vec2::new(b[0], b[1])).norm()
                    / (a.norm() * b.norm());
                if ratio <= GENERAL_POSITION_TOL {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::real_vector;
    use crate::sampling::{random_unit_vector, stream};

    fn basis_state(k: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(8);
        v[k] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn partition_reordering_round_trips() {
        let mut rng = stream(31, 0);
        let v = random_unit_vector(&mut rng, 8);
        for p in Partition::ALL {
            assert_eq!(p.from_local_first(&p.to_local_first(&v)), v);
        }
        // |abc> with a = 1 on party 2: index 0b010 moves to 0b100 under B|AC
        assert_eq!(
            Partition::BAC.to_local_first(&basis_state(2)),
            basis_state(4)
        );
        assert_eq!(
            Partition::CAB.to_local_first(&basis_state(1)),
            basis_state(4)
        );
    }

    #[test]
    fn tripartite_examples() {
        let f = is_tripartite_product(&basis_state(0), 1e-10)
            .unwrap()
            .unwrap();
        assert!((f[0][0].norm() - 1.0).abs() < 1e-15);
        let phi1 = real_vector(&[1., 0., 0., 1.]);
        let v = tensor_vec(&real_vector(&[1., 2.]), &phi1);
        assert!(is_tripartite_product(&v, 1e-8).unwrap().is_none());
        assert_eq!(
            is_tripartite_product(&ComplexVector::zeros(8), 1e-8),
            Err(Error::ZeroVector)
        );

        let mut rng = stream(32, 0);
        for _ in 0..20 {
            let (a, b, c) = (
                random_unit_vector(&mut rng, 2),
                random_unit_vector(&mut rng, 2),
                random_unit_vector(&mut rng, 2),
            );
            let v = tensor_vec(&tensor_vec(&a, &b), &c);
            let f = is_tripartite_product(&v, 1e-10).unwrap().unwrap();
            let rebuilt = tensor_vec(&tensor_vec(&f[0], &f[1]), &f[2]);
            assert!((rebuilt - v).norm() < 1e-12);
        }
    }

    fn random_products(seed: u64, partition: Partition) -> Vec<ComplexVector> {
        let mut rng = stream(seed, 0);
        (0..4)
            .map(|_| {
                let a = random_unit_vector(&mut rng, 2);
                let psi = random_unit_vector(&mut rng, 4);
                partition.from_local_first(&tensor_vec(&a, &psi))
            })
            .collect()
    }

    fn matches_up_to_scalar(a: &ComplexVector, b: &ComplexVector) -> bool {
        (a.dotc(b).norm() - a.norm() * b.norm()).abs() < 1e-8
    }

    #[test]
    fn recovers_planted_products() {
        for (seed, p) in (0..30).zip(Partition::ALL.iter().cycle()) {
            let planted = random_products(seed, *p);
            let found = bipartite_products_in_subspace(&planted, *p).unwrap();
            assert_eq!(found.len(), 4, "seed {seed}");
            for v in &planted {
                assert!(found.iter().any(|r| matches_up_to_scalar(&r.vector, v)));
            }
            assert!(found
                .iter()
                .all(|r| r.residual < 1e-8 && r.tripartite_factors.is_none()));
        }
    }

    #[test]
    fn finds_the_point_at_infinity() {
        let mut planted = random_products(40, Partition::ABC);
        let mut rng = stream(41, 0);
        planted[0] = tensor_vec(&real_vector(&[1., 0.]), &random_unit_vector(&mut rng, 4));
        let found = bipartite_products_in_subspace(&planted, Partition::ABC).unwrap();
        assert_eq!(found.len(), 4);
        assert!(found.iter().any(|r| r.local_parameter().is_none()));
    }

    #[test]
    fn continuum_is_reported() {
        // span{|0>,|1>} ⊗ span{|00>, |01>} contains a two-parameter family
        let basis: Vec<ComplexVector> = [0, 1, 4, 5].iter().map(|&k| basis_state(k)).collect();
        assert_eq!(
            bipartite_products_in_subspace(&basis, Partition::ABC),
            Err(Error::ContinuumOfProducts)
        );
        let short: Vec<ComplexVector> = basis[..3].to_vec();
        assert!(matches!(
            bipartite_products_in_subspace(&short, Partition::ABC),
            Err(Error::SubspaceDimension { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        let recs: Vec<ProductVectorRecord> = [0usize, 1, 6, 7]
            .iter()
            .map(|&k| {
                let v = basis_state(k);
                let f = is_tripartite_product(&v, 1e-10).unwrap();
                ProductVectorRecord {
                    vector: v.clone(),
                    partition: Partition::ABC,
                    local_factor: f.as_ref().unwrap()[0].clone(),
                    remote_factor: tensor_vec(&f.as_ref().unwrap()[1], &f.as_ref().unwrap()[2]),
                    tripartite_factors: f,
                    residual: 0.0,
                }
            })
            .collect();
        assert!(!general_position(&recs).unwrap());
        let mut missing = recs.clone();
        missing[2].tripartite_factors = None;
        assert_eq!(
            general_position(&missing),
            Err(Error::MissingTripartiteFactors(2))
        );
        assert!(general_position(&recs[..3]).is_err());
    }
}
