//! Verification and SLOCC classification of three-qubit rank-four PPT
//! entangled states.
//!
//! The pipeline: check the state is a rank-four PPT entangled state; compute
//! the Lorentz invariant of the normalized state; zero invariant means the
//! state is SLOCC-equivalent to the Bell-basis family and is labeled by the
//! orbit of a cross-ratio; otherwise the four product vectors of the kernel
//! decide whether the state comes from an unextendible product basis.

mod products;

pub use products::{
    bipartite_products_in_subspace, general_position, is_tripartite_product, Partition,
    ProductVectorRecord, DEFAULT_PRODUCT_TOL, DEFAULT_TRIPARTITE_TOL, GENERAL_POSITION_TOL,
};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lorentz::lorentz_invariant;
use crate::qmat::{
    is_ppt, kernel_basis, numeric_rank, range_basis, tensor_vec, ComplexMatrix, ComplexVector,
    MultiQubitState, DEFAULT_RANK_TOL,
};
use crate::vecgeom::{
    bell_transform, is_real, orthogonalizability, t_orbit, CharacteristicSet, Orthogonalizability,
    VectorQuadruple, DEFAULT_BELL_TOL, DEFAULT_ORBIT_TOL,
};

/// `|I_ρ|` at or below this (on the trace-one state) counts as zero.
pub const TYPE_II_THRESHOLD: f64 = 1e-9;

/// Invariants between [`TYPE_II_THRESHOLD`] and this are flagged as borderline.
pub const BORDERLINE_THRESHOLD: f64 = 1e-6;

/// Relative tolerance of the PPT test used in verification.
pub const DEFAULT_PPT_TOL: f64 = 1e-10;

/// Most negative least-squares weight that is silently clamped to zero.
pub const WEIGHT_CLAMP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StateType {
    /// Nonzero Lorentz invariant.
    TypeI,
    /// Vanishing Lorentz invariant.
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UpbVerdict {
    UpbConstructible,
    NotUpbConstructible,
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of every defining property of a three-qubit rank-four PPT entangled state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rank: usize,
    pub checks: Vec<Check>,
    /// Range product vectors per partition, in [`Partition::ALL`] order, when the search ran.
    pub range_products: Vec<(Partition, Vec<ProductVectorRecord>)>,
    pub entangled: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    pub fn products(&self, partition: Partition) -> Option<&[ProductVectorRecord]> {
        self.range_products
            .iter()
            .find(|(p, _)| *p == partition)
            .map(|(_, r)| r.as_slice())
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

/// Runs all checks; failures are recorded in the report, never returned as errors.
pub fn verify_rank4_pptes(rho: &MultiQubitState) -> VerificationReport {
    verify_with(rho, Execution::default())
}

pub fn verify_with(rho: &MultiQubitState, exec: Execution) -> VerificationReport {
    let mut checks = Vec::new();
    let rank = numeric_rank(rho.matrix(), DEFAULT_RANK_TOL);
    let fail = |checks: Vec<Check>, rank| VerificationReport {
        rank,
        checks,
        range_products: Vec::new(),
        entangled: false,
    };

    checks.push(check(
        "three_qubits",
        rho.qubits() == 3,
        format!("{} qubits", rho.qubits()),
    ));
    if rho.qubits() != 3 {
        return fail(checks, rank);
    }
    let rho = rho.normalized();
    checks.push(check(
        "psd_trace_normalizable",
        true,
        "positive semidefinite with positive trace",
    ));
    checks.push(check("rank_four", rank == 4, format!("rank {rank}")));

    match is_ppt(&rho, DEFAULT_PPT_TOL) {
        Ok(report) => {
            for c in report.checks.iter().filter(|c| c.parties.len() == 1) {
                let party = c.parties[0];
                checks.push(check(
                    &format!("ppt_party_{party}"),
                    c.positive,
                    format!("min eigenvalue {:.3e}", c.min_eigenvalue),
                ));
                checks.push(check(
                    &format!("partial_transpose_rank_{party}"),
                    c.rank == 4,
                    format!("rank {}", c.rank),
                ));
            }
        }
        Err(e) => checks.push(check("ppt", false, e.to_string())),
    }
    if rank != 4 {
        checks.push(check("range_products", false, "skipped: rank is not four"));
        return fail(checks, rank);
    }

    let basis = range_basis(rho.matrix(), DEFAULT_RANK_TOL).expect("state is Hermitian");
    let searches = exec.map(&Partition::ALL, |&p| {
        (p, bipartite_products_in_subspace(&basis, p))
    });
    let mut range_products = Vec::new();
    let mut tripartite = 0;
    for (p, found) in searches {
        let label = format!("{p:?}").to_lowercase();
        match found {
            Ok(records) => {
                checks.push(check(
                    &format!("four_products_{label}"),
                    records.len() == 4,
                    format!("{} bipartite product vectors", records.len()),
                ));
                tripartite += records
                    .iter()
                    .filter(|r| r.tripartite_factors.is_some())
                    .count();
                range_products.push((p, records));
            }
            Err(e) => checks.push(check(
                &format!("four_products_{label}"),
                false,
                e.to_string(),
            )),
        }
    }
    checks.push(check(
        "range_completely_entangled",
        tripartite == 0 && range_products.len() == 3,
        format!("{tripartite} fully product vectors found in the range"),
    ));
    let entangled = checks.iter().all(|c| c.passed);
    VerificationReport {
        rank,
        checks,
        range_products,
        entangled,
    }
}

// ---------------------------------------------------------------------------
// Characteristic set, UPB test, decomposition

fn local_quadruple(records: &[ProductVectorRecord]) -> Result<VectorQuadruple> {
    if records.len() != 4 {
        return Err(Error::ProductCount {
            expected: 4,
            found: records.len(),
        });
    }
    VectorQuadruple::new(std::array::from_fn(|i| records[i].local_vec2()))
}

fn range_products_abc(rho: &MultiQubitState) -> Result<Vec<ProductVectorRecord>> {
    let basis = range_basis(rho.matrix(), DEFAULT_RANK_TOL)?;
    bipartite_products_in_subspace(&basis, Partition::ABC)
}

/// Orbit of the cross-ratio of the party-1 factors of the four range product vectors.
pub fn characteristic_set(rho: &MultiQubitState) -> Result<CharacteristicSet> {
    characteristic_set_from(&range_products_abc(rho)?)
}

fn characteristic_set_from(records: &[ProductVectorRecord]) -> Result<CharacteristicSet> {
    t_orbit(local_quadruple(records)?.cross_ratio())
}

/// Whether cross-ratios `t₁, t₂, t₃` of the three parties' kernel factors allow
/// a local map onto an unextendible product basis: all real, and each in a
/// different one of `(−∞, 0)`, `(0, 1)`, `(1, ∞)`.
pub fn upb_constructibility(t: [Complex64; 3]) -> Result<bool> {
    let mut seen = Vec::new();
    for tk in t {
        let class = orthogonalizability(tk)?;
        if class == Orthogonalizability::None || seen.contains(&class) {
            return Ok(false);
        }
        seen.push(class);
    }
    Ok(true)
}

fn ser_vector<S: Serializer>(v: &ComplexVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

/// One term `λ (αα†) ⊗ (ψψ†)` with unit `α`, `ψ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiseparableTerm {
    #[serde(serialize_with = "ser_vector")]
    pub alpha: ComplexVector,
    #[serde(serialize_with = "ser_vector")]
    pub psi: ComplexVector,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiseparableDecomposition {
    pub terms: Vec<BiseparableTerm>,
    /// `‖ρ − Σ λᵢ (αᵢαᵢ†) ⊗ (ψᵢψᵢ†)‖ / ‖ρ‖` (Frobenius).
    pub relative_residual: f64,
}

impl BiseparableDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(8, 8);
        for t in &self.terms {
            let e = tensor_vec(&t.alpha, &t.psi);
            m += (&e * e.adjoint()).scale(t.weight);
        }
        m
    }
}

/// Writes `ρ` (as given, not normalized) as `Σ λᵢ (αᵢαᵢ†) ⊗ (ψᵢψᵢ†)` over the
/// A|BC cut, using the four range product vectors.
///
/// The weights solve the least-squares normal equations `G λ = h` with
/// `Gᵢⱼ = |eᵢ†eⱼ|²` and `hᵢ = eᵢ†ρeᵢ`, where `eᵢ = αᵢ ⊗ ψᵢ`.
pub fn decompose_biseparable(rho: &MultiQubitState) -> Result<BiseparableDecomposition> {
    let records = range_products_abc(rho)?;
    if records.len() != 4 {
        return Err(Error::ProductCount {
            expected: 4,
            found: records.len(),
        });
    }
    let e: Vec<ComplexVector> = records
        .iter()
        .map(|r| tensor_vec(&r.local_factor, &r.remote_factor))
        .collect();
    let g = nalgebra::DMatrix::<f64>::from_fn(4, 4, |i, j| e[i].dotc(&e[j]).norm_sqr());
    let h = nalgebra::DVector::<f64>::from_fn(4, |i, _| e[i].dotc(&(rho.matrix() * &e[i])).re);
    let lambda = g
        .clone()
        .svd(true, true)
        .solve(&h, 1e-14)
        .map_err(|e| Error::Degenerate(format!("weight system: {e}")))?;
    let scale = rho.trace();
    let mut terms = Vec::with_capacity(4);
    for (index, (record, &w)) in records.iter().zip(lambda.iter()).enumerate() {
        if w < -WEIGHT_CLAMP_TOL * scale {
            return Err(Error::NegativeWeight { index, weight: w });
        }
        terms.push(BiseparableTerm {
            alpha: record.local_factor.clone(),
            psi: record.remote_factor.clone(),
            weight: w.max(0.0),
        });
    }
    let mut out = BiseparableDecomposition {
        terms,
        relative_residual: 0.0,
    };
    out.relative_residual = (rho.matrix() - out.reconstruct()).norm() / rho.matrix().norm();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    /// Lorentz invariant of the trace-one state.
    pub invariant: f64,
    #[serde(rename = "type")]
    pub state_type: StateType,
    pub kernel_products: Vec<ProductVectorRecord>,
    pub general_position: Option<bool>,
    pub t_triple: Option<[Complex64; 3]>,
    pub upb_verdict: UpbVerdict,
    /// For zero-invariant states: the orbit labelling the SLOCC class.
    pub canonical_t_orbit: Option<CharacteristicSet>,
    /// Orbit of the party-1 cross-ratio of the range product vectors.
    pub characteristic_set: CharacteristicSet,
    pub range_products: Vec<ProductVectorRecord>,
    pub diagnostics: Vec<String>,
}

pub fn classify(rho: &MultiQubitState) -> Result<ClassificationReport> {
    classify_with(rho, Execution::default())
}

pub fn classify_with(rho: &MultiQubitState, exec: Execution) -> Result<ClassificationReport> {
    let verification = verify_with(rho, exec);
    if !verification.entangled {
        return Err(Error::NotRankFourPptes(verification.failures()));
    }
    let rho = rho.normalized();
    let mut diagnostics = Vec::new();
    let inv = lorentz_invariant(&rho);
    let invariant = inv.value;
    if inv.imag_residual > 1e-10 {
        diagnostics.push(format!(
            "invariant has imaginary residual {:.3e}",
            inv.imag_residual
        ));
    }
    let range_products = verification
        .products(Partition::ABC)
        .expect("verified")
        .to_vec();
    let characteristic_set = characteristic_set_from(&range_products)?;

    if invariant.abs() <= TYPE_II_THRESHOLD {
        let remote: Vec<ComplexVector> = range_products
            .iter()
            .map(|r| r.remote_factor.clone())
            .collect();
        match bell_transform(&remote, DEFAULT_BELL_TOL) {
            Ok(bt) => diagnostics.push(format!(
                "remote factors map onto the Bell basis (residual {:.3e})",
                bt.residual
            )),
            Err(e) => diagnostics.push(format!(
                "Bell-basis reduction of the remote factors failed: {e}"
            )),
        }
        return Ok(ClassificationReport {
            invariant,
            state_type: StateType::TypeII,
            kernel_products: Vec::new(),
            general_position: None,
            t_triple: None,
            upb_verdict: UpbVerdict::NotUpbConstructible,
            canonical_t_orbit: Some(characteristic_set),
            characteristic_set,
            range_products,
            diagnostics,
        });
    }
    if invariant.abs() <= BORDERLINE_THRESHOLD {
        diagnostics.push(format!(
            "borderline invariant {invariant:.3e} treated as nonzero"
        ));
    }

    let kernel = kernel_basis(rho.matrix(), DEFAULT_RANK_TOL)?;
    let mut report = ClassificationReport {
        invariant,
        state_type: StateType::TypeI,
        kernel_products: Vec::new(),
        general_position: None,
        t_triple: None,
        upb_verdict: UpbVerdict::NotUpbConstructible,
        canonical_t_orbit: None,
        characteristic_set,
        range_products,
        diagnostics,
    };
    let kernel_products = match bipartite_products_in_subspace(&kernel, Partition::ABC) {
        Ok(k) => k,
        Err(e) => {
            report
                .diagnostics
                .push(format!("kernel product-vector search failed: {e}"));
            return Ok(report);
        }
    };
    report.kernel_products = kernel_products;
    let tripartite = report
        .kernel_products
        .iter()
        .filter(|r| r.tripartite_factors.is_some())
        .count();
    if report.kernel_products.len() != 4 || tripartite != 4 {
        report.diagnostics.push(format!(
            "kernel holds {} bipartite product vectors, {tripartite} of them fully product",
            report.kernel_products.len()
        ));
        return Ok(report);
    }
    let gp = general_position(&report.kernel_products)?;
    report.general_position = Some(gp);
    if !gp {
        report
            .diagnostics
            .push("kernel product vectors are fully product but not in general position".into());
        return Ok(report);
    }
    let factors: Vec<&[ComplexVector; 3]> = report
        .kernel_products
        .iter()
        .map(|r| r.tripartite_factors.as_ref().expect("checked"))
        .collect();
    let mut t = [Complex64::new(0.0, 0.0); 3];
    for (party, tk) in t.iter_mut().enumerate() {
        let q = VectorQuadruple::new(std::array::from_fn(|j| {
            crate::vecgeom::Vec2::new(factors[j][party][0], factors[j][party][1])
        }))?;
        *tk = q.cross_ratio();
    }
    report.t_triple = Some(t);
    if t.iter().any(|&tk| !is_real(tk)) {
        report
            .diagnostics
            .push("a kernel cross-ratio is not real".into());
    }
    if upb_constructibility(t)? {
        report.upb_verdict = UpbVerdict::UpbConstructible;
    }
    Ok(report)
}

/// Classifies each state independently.
pub fn classify_many(
    states: &[MultiQubitState],
    exec: Execution,
) -> Vec<Result<ClassificationReport>> {
    exec.map(states, |s| classify_with(s, Execution::Sequential))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SloccVerdict {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SloccComparison {
    pub verdict: SloccVerdict,
    pub types: [StateType; 2],
    pub orbits: [CharacteristicSet; 2],
    pub reason: String,
}

/// Compares two verified states by type and characteristic set.
///
/// Different types or orbits rule out equivalence. Equal orbits decide
/// equivalence for zero-invariant states only; for nonzero invariant the
/// answer is inconclusive.
pub fn slocc_compare(a: &MultiQubitState, b: &MultiQubitState) -> Result<SloccComparison> {
    let ra = classify(a)?;
    let rb = classify(b)?;
    Ok(compare_reports(&ra, &rb))
}

pub fn compare_reports(ra: &ClassificationReport, rb: &ClassificationReport) -> SloccComparison {
    let types = [ra.state_type, rb.state_type];
    let orbits = [ra.characteristic_set, rb.characteristic_set];
    let (verdict, reason) = if ra.state_type != rb.state_type {
        (
            SloccVerdict::NotEquivalent,
            "one invariant vanishes and the other does not".to_string(),
        )
    } else if !orbits[0].same_as(&orbits[1], DEFAULT_ORBIT_TOL) {
        (
            SloccVerdict::NotEquivalent,
            "characteristic sets differ".to_string(),
        )
    } else if ra.state_type == StateType::TypeII {
        (
            SloccVerdict::Equivalent,
            "zero invariant and equal characteristic sets".to_string(),
        )
    } else {
        (
            SloccVerdict::Inconclusive,
            "equal characteristic sets do not decide equivalence for nonzero invariant".to_string(),
        )
    };
    SloccComparison {
        verdict,
        types,
        orbits,
        reason,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{
        qp_state, type2_state, upb_state, upb_vectors, AlphaFormula, QpSpec, Type2Spec, UpbSpec,
    };
    use crate::qmat::{c, r, real_vector, DEFAULT_STATE_TOL};
    use crate::sampling::{random_local_invertible, random_unit_vector, stream};
    use std::f64::consts::FRAC_PI_4;

    fn type2(t: Complex64) -> MultiQubitState {
        type2_state(&Type2Spec::new(t).unwrap(), true).unwrap()
    }

    fn qp(p1: f64) -> MultiQubitState {
        qp_state(&QpSpec::one_parameter(p1, AlphaFormula::Example17).unwrap()).unwrap()
    }

    #[test]
    fn upb_constructibility_examples() {
        assert!(upb_constructibility([r(-1.0), r(2.0), r(0.5)]).unwrap());
        assert!(!upb_constructibility([r(-1.0), r(-2.0), r(0.5)]).unwrap());
        assert!(!upb_constructibility([c(0.0, 1.0), r(2.0), r(0.5)]).unwrap());
        assert!(upb_constructibility([r(0.0), r(2.0), r(0.5)]).is_err());
    }

    #[test]
    fn type2_range_products_are_the_construction_vectors() {
        for t in [r(2.0), c(0.0, 1.0), r(-0.7)] {
            let rho = type2(t);
            let records = range_products_abc(&rho).unwrap();
            assert_eq!(records.len(), 4);
            let mut params: Vec<Option<Complex64>> =
                records.iter().map(|r| r.local_parameter()).collect();
            params.sort_by(|a, b| a.map(|z| z.re).partial_cmp(&b.map(|z| z.re)).unwrap());
            // columns (1,0), (0,1), (1,1), (t,1): parameters ∞, 0, 1, t
            assert!(params.iter().any(|p| p.is_none()));
            for want in [r(0.0), r(1.0), t] {
                assert!(
                    params.iter().flatten().any(|z| (z - want).norm() < 1e-8),
                    "t = {t}"
                );
            }
            let orbit = characteristic_set(&rho).unwrap();
            assert!(orbit.contains(t, 1e-8));
        }
    }

    #[test]
    fn qp_characteristic_parameters() {
        let records = range_products_abc(&qp(0.35651164020026005)).unwrap();
        assert_eq!(records.len(), 4);
        for a in [-8.843514882184724, 0.19237140417058013, 1.0, 0.0] {
            assert!(records
                .iter()
                .any(|rec| rec.local_parameter().is_some_and(|z| (z - a).norm() < 1e-6)));
        }
        let orbit = characteristic_set(&qp(0.35651164020026005)).unwrap();
        assert!(orbit.contains(r(-0.2651270982388964), 1e-6));
    }

    #[test]
    fn upb_kernel_products_are_the_members() {
        let spec = UpbSpec::new([0.3, 0.9, 1.2]).unwrap();
        let rho = upb_state(&spec).unwrap();
        let kernel = kernel_basis(rho.matrix(), DEFAULT_RANK_TOL).unwrap();
        let found = bipartite_products_in_subspace(&kernel, Partition::ABC).unwrap();
        assert_eq!(found.len(), 4);
        for xi in upb_vectors(&spec) {
            assert!(found
                .iter()
                .any(|r| (r.vector.dotc(&xi).norm() - 1.0).abs() < 1e-8));
        }
        assert!(found.iter().all(|r| r.tripartite_factors.is_some()));
        assert!(general_position(&found).unwrap());
    }

    #[test]
    fn verification_examples() {
        let report = verify_rank4_pptes(&type2(r(2.0)));
        assert!(report.entangled, "{:?}", report.failures());

        // separable rank four with product range vectors
        let mut rng = stream(51, 0);
        let terms: Vec<(f64, ComplexVector)> = (0..4)
            .map(|_| {
                let v = tensor_vec(
                    &tensor_vec(
                        &random_unit_vector(&mut rng, 2),
                        &random_unit_vector(&mut rng, 2),
                    ),
                    &random_unit_vector(&mut rng, 2),
                );
                (0.25, v)
            })
            .collect();
        let sep = MultiQubitState::mixture(&terms, DEFAULT_STATE_TOL).unwrap();
        let report = verify_rank4_pptes(&sep);
        assert!(!report.entangled);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "range_completely_entangled" && !c.passed));

        let ghz = real_vector(&[1., 0., 0., 0., 0., 0., 0., 1.]).normalize();
        let report = verify_rank4_pptes(&MultiQubitState::pure(&ghz, DEFAULT_STATE_TOL).unwrap());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name.starts_with("ppt_party") && !c.passed));
    }

    #[test]
    fn decomposition_of_type2() {
        for t in [r(2.0), c(0.3, -0.8)] {
            let rho = type2_state(&Type2Spec::new(t).unwrap(), false).unwrap();
            let d = decompose_biseparable(&rho).unwrap();
            assert!(d.relative_residual < 1e-8);
            let mut w: Vec<f64> = d.terms.iter().map(|t| t.weight).collect();
            w.sort_by(f64::total_cmp);
            let a = ((t * t - t).norm(), (t - 1.0).norm(), t.norm());
            let mut want = vec![2.0 * a.0, 2.0 * a.1, 4.0 * a.2, 2.0 * (t.norm_sqr() + 1.0)];
            want.sort_by(f64::total_cmp);
            for (x, y) in w.iter().zip(&want) {
                assert!((x - y).abs() < 1e-8 * y, "{w:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn decomposition_of_upb_state() {
        let spec = UpbSpec::new([FRAC_PI_4, 0.4, 1.1]).unwrap();
        let d = decompose_biseparable(&upb_state(&spec).unwrap()).unwrap();
        assert!(d.relative_residual < 1e-8);
        assert!(d.terms.iter().all(|t| (t.weight - 0.25).abs() < 1e-8));
    }

    #[test]
    fn classification_examples() {
        let upb = classify(&upb_state(&UpbSpec::new([0.4, 0.7, 1.0]).unwrap()).unwrap()).unwrap();
        assert_eq!(
            (upb.state_type, upb.upb_verdict),
            (StateType::TypeI, UpbVerdict::UpbConstructible)
        );
        assert_eq!(upb.general_position, Some(true));

        let q = classify(&qp(0.35651164020026005)).unwrap();
        assert_eq!(
            (q.state_type, q.upb_verdict),
            (StateType::TypeI, UpbVerdict::NotUpbConstructible)
        );

        let t2 = classify(&type2(c(0.0, 1.0))).unwrap();
        assert_eq!(t2.state_type, StateType::TypeII);
        assert!(t2.canonical_t_orbit.unwrap().contains(c(0.0, 1.0), 1e-8));

        let mixed = MultiQubitState::new(
            ComplexMatrix::identity(8, 8).unscale(8.0),
            DEFAULT_STATE_TOL,
        )
        .unwrap();
        assert!(matches!(classify(&mixed), Err(Error::NotRankFourPptes(_))));
    }

    #[test]
    fn classification_is_slocc_stable() {
        let mut rng = stream(52, 0);
        for t in [r(2.0), r(0.3), c(0.5, 0.5)] {
            let rho = type2(t);
            let v = random_local_invertible(&mut rng, 3, 20.0);
            let moved = rho.conjugate_by(&v).unwrap();
            let (a, b) = (classify(&rho).unwrap(), classify(&moved).unwrap());
            assert_eq!(a.state_type, b.state_type);
            assert!(a.characteristic_set.same_as(&b.characteristic_set, 1e-6));
        }
    }

    #[test]
    fn slocc_comparisons() {
        let same = slocc_compare(&type2(r(2.0)), &type2(r(0.5))).unwrap();
        assert_eq!(same.verdict, SloccVerdict::Equivalent);
        let diff = slocc_compare(&type2(r(2.0)), &type2(r(3.0))).unwrap();
        assert_eq!(diff.verdict, SloccVerdict::NotEquivalent);
        let qs = slocc_compare(&qp(0.35651164020026005), &qp(0.3943325092488642)).unwrap();
        assert_eq!(qs.verdict, SloccVerdict::NotEquivalent);
        let refl = slocc_compare(&qp(0.35651164020026005), &qp(0.35651164020026005)).unwrap();
        assert_eq!(refl.verdict, SloccVerdict::Inconclusive);
    }
}
