//! Explicit families of three-qubit rank-four PPT entangled states.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{
    numeric_rank, r, split_tensor, tensor_all, tensor_vec, ComplexMatrix, ComplexVector,
    MultiQubitState, DEFAULT_RANK_TOL, DEFAULT_STATE_TOL,
};
use crate::vecgeom::{bell_vectors, Mat2};

/// Smallest allowed distance of `t` from the excluded values 0 and 1.
pub const EXCLUDED_T_TOL: f64 = 1e-12;

fn ket(a: f64, b: f64) -> ComplexVector {
    ComplexVector::from_vec(vec![r(a), r(b)])
}

fn product3(a: &ComplexVector, b: &ComplexVector, c: &ComplexVector) -> ComplexVector {
    tensor_vec(&tensor_vec(a, b), c)
}

fn outer(v: &ComplexVector) -> ComplexMatrix {
    v * v.adjoint()
}

fn check_t(t: Complex64) -> Result<()> {
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(Error::NonFinite);
    }
    if t.norm() <= EXCLUDED_T_TOL || (t - 1.0).norm() <= EXCLUDED_T_TOL {
        return Err(Error::InvalidParameter(format!(
            "t = {t} is excluded (t must differ from 0 and 1)"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// UPB states

/// Angles of the three-qubit UPB, each in the open interval `(0, π/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UpbSpec {
    theta: [f64; 3],
}

impl UpbSpec {
    pub fn new(theta: [f64; 3]) -> Result<Self> {
        for (k, &th) in theta.iter().enumerate() {
            if !(th > 0.0 && th < FRAC_PI_2) {
                return Err(Error::InvalidParameter(format!(
                    "θ{} = {th} is outside (0, π/2)",
                    k + 1
                )));
            }
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> [f64; 3] {
        self.theta
    }

    /// `x_k = (cos θ_k, sin θ_k)`, 0-based `k`.
    pub fn x(&self, k: usize) -> ComplexVector {
        ket(self.theta[k].cos(), self.theta[k].sin())
    }

    /// `x'_k = (−sin θ_k, cos θ_k)`.
    pub fn x_perp(&self, k: usize) -> ComplexVector {
        ket(-self.theta[k].sin(), self.theta[k].cos())
    }
}

/// Local factors `(a_j, b_j, c_j)` of the four UPB members.
pub fn upb_factors(spec: &UpbSpec) -> [[ComplexVector; 3]; 4] {
    let (zero, one) = (ket(1., 0.), ket(0., 1.));
    [
        [zero.clone(), zero.clone(), zero],
        [one.clone(), spec.x(1), spec.x(2)],
        [spec.x(0), one.clone(), spec.x_perp(2)],
        [spec.x_perp(0), spec.x_perp(1), one],
    ]
}

/// `|000⟩`, `|1⟩x₂x₃`, `x₁|1⟩x'₃`, `x'₁x'₂|1⟩`.
pub fn upb_vectors(spec: &UpbSpec) -> [ComplexVector; 4] {
    upb_factors(spec).map(|[a, b, c]| product3(&a, &b, &c))
}

/// `¼(I₈ − Σ ξⱼξⱼ†)`.
pub fn upb_state(spec: &UpbSpec) -> Result<MultiQubitState> {
    let mut m = ComplexMatrix::identity(8, 8);
    for xi in upb_vectors(spec) {
        m -= outer(&xi);
    }
    MultiQubitState::new(m.scale(0.25), DEFAULT_STATE_TOL)
}

/// `−¼(cos²θ₁cos²θ₂ + sin²θ₁cos²θ₃ + sin²θ₂sin²θ₃)`.
pub fn upb_invariant_closed_form(spec: &UpbSpec) -> f64 {
    let [t1, t2, t3] = spec.theta;
    let (c1, s1, c2, s2, c3, s3) = (t1.cos(), t1.sin(), t2.cos(), t2.sin(), t3.cos(), t3.sin());
    -0.25 * (c1 * c1 * c2 * c2 + s1 * s1 * c3 * c3 + s2 * s2 * s3 * s3)
}

/// The closed-form A|BC decomposition of the UPB state: party-1 factors
/// `(|1⟩, |0⟩, x'₁, x₁)` paired with the unnormalized remote vectors `eᵢ`.
/// Every term carries weight ¼ once both factors are normalized.
pub fn upb_biseparable_factors(spec: &UpbSpec) -> [(ComplexVector, ComplexVector); 4] {
    let [_, t2, t3] = spec.theta;
    let (c2, s2, c3, s3) = (t2.cos(), t2.sin(), t3.cos(), t3.sin());
    let v = |e: [f64; 4]| ComplexVector::from_iterator(4, e.into_iter().map(r));
    [
        (
            ket(0., 1.),
            v([
                -c2 * s3 * s3 / c3 - s2 * s2 / (c2 * c3),
                c2 * s3,
                s2 * c3,
                s2 * s3,
            ]),
        ),
        (ket(1., 0.), v([0., c2 * s3, s2 * c3, s2 * s3])),
        (spec.x_perp(0), v([0., c2, -s3 / (s2 * c3), s2])),
        (spec.x(0), v([0., -s2 / (c2 * s3), c3, s3])),
    ]
}

// ---------------------------------------------------------------------------
// Canonical zero-invariant family

/// Parameter `t` and weights of the Bell-basis family; the default weights
/// `(|t²−t|, |t−1|, |t|, 1)` are the ones making the state PPT.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Type2Spec {
    t: Complex64,
    weights: [f64; 4],
}

impl Type2Spec {
    pub fn new(t: Complex64) -> Result<Self> {
        check_t(t)?;
        Ok(Self {
            t,
            weights: Self::default_weights(t),
        })
    }

    pub fn with_weights(t: Complex64, weights: [f64; 4]) -> Result<Self> {
        check_t(t)?;
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "weights must be positive, got {w}"
            )));
        }
        Ok(Self { t, weights })
    }

    pub fn default_weights(t: Complex64) -> [f64; 4] {
        [(t * t - t).norm(), (t - 1.0).norm(), t.norm(), 1.0]
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn weights(&self) -> [f64; 4] {
        self.weights
    }
}

/// Party-1 factors `aᵢ`, the columns of `((1,0,1,t),(0,1,1,1))`.
pub fn type2_local_factors(t: Complex64) -> [ComplexVector; 4] {
    let one = r(1.0);
    let zero = r(0.0);
    [[one, zero], [zero, one], [one, one], [t, one]].map(|e| ComplexVector::from_vec(e.to_vec()))
}

/// `Σ λᵢ (aᵢaᵢ†) ⊗ (φᵢφᵢ†)` with unnormalized Bell vectors `φᵢ`.
pub fn type2_state(spec: &Type2Spec, normalize: bool) -> Result<MultiQubitState> {
    let a = type2_local_factors(spec.t);
    let phi = bell_vectors();
    let mut m = ComplexMatrix::zeros(8, 8);
    for i in 0..4 {
        m += outer(&tensor_vec(&a[i], &phi[i])).scale(spec.weights[i]);
    }
    let state = MultiQubitState::new(m, DEFAULT_STATE_TOL)?;
    Ok(if normalize { state.normalized() } else { state })
}

/// Basis of the kernel of the default-weight family, parametrized by `(a, b, c, d)`:
/// `(a, −((|t|²+t)c + (|t|²−t)d)/2|t|², −((|t|²−t)c + (|t|²+t)d)/2|t|², −a, b, c, d, b)`.
pub fn type2_kernel_basis(t: Complex64) -> Result<[ComplexVector; 4]> {
    check_t(t)?;
    let n2 = t.norm_sqr();
    let plus = (t + n2) / (-2.0 * n2);
    let minus = (n2 - t) / (-2.0 * n2);
    let zero = r(0.0);
    let one = r(1.0);
    let v = |e: [Complex64; 8]| ComplexVector::from_vec(e.to_vec());
    Ok([
        v([one, zero, zero, -one, zero, zero, zero, zero]),
        v([zero, zero, zero, zero, one, zero, zero, one]),
        v([zero, plus, minus, zero, zero, one, zero, zero]),
        v([zero, minus, plus, zero, zero, zero, one, zero]),
    ])
}

/// The two 2×2 blocks left after reducing the second-party partial transpose of
/// the family with weights `(λ₁, λ₂, λ₃, 1)` by congruence. Both vanish exactly
/// when that partial transpose has rank four.
pub fn type2_ppt_blocks(l1: f64, l2: f64, l3: f64, t: Complex64) -> Result<(Mat2, Mat2)> {
    for (name, l) in [("λ1", l1), ("λ2", l2), ("λ3", l3)] {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {l}"
            )));
        }
    }
    let n2 = t.norm_sqr();
    let tb = t.conj();
    let (d1, d2) = (l3 + n2, l3 + 1.0);
    if d1 <= 0.0 || d2 <= 0.0 {
        return Err(Error::InvalidParameter(
            "λ3 + |t|² and λ3 + 1 must be positive".into(),
        ));
    }
    let p11 = r(d1 - l1 * l1 / d1) - (t + l3) * (tb + l3) / d2;
    let p12 = (t + l3) * (l2 / d2) - (t + l3) * (l1 / d1);
    let p21 = (tb + l3) * (l2 / d2) - (tb + l3) * (l1 / d1);
    let p22 = (-t + 1.0) * (-tb + 1.0) * (l3 / d1) - l2 * l2 / d2;

    let q11 = r(l1 - (l3 - n2).powi(2) / l1) - (-t + l3) * (-tb + l3) / l2;
    let q12 = (-t + l3) * ((1.0 - l3) / l2) - (-t + l3) * ((l3 - n2) / l1);
    let q21 = (-tb + l3) * ((1.0 - l3) / l2) - (-tb + l3) * ((l3 - n2) / l1);
    let q22 = r(l2 - (l3 - 1.0).powi(2) / l2) - (-t + l3) * (-tb + l3) / l1;

    Ok((Mat2::new(p11, p12, p21, p22), Mat2::new(q11, q12, q21, q22)))
}

// ---------------------------------------------------------------------------
// Six-vector family

/// Which closed form for `α` to use in [`qp_state`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum AlphaFormula {
    /// `2/(9p₁) + 2/(9p₂) + 2/(9p₃) + 8/(81p₄) + 125/(81p₅)`.
    Example13,
    /// `1/(2p₁) + 2/(5p₂) + 1/(5p₃) + 2/(5p₄) + 1/(2p₅)`.
    #[default]
    Example17,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QpSpec {
    p: [f64; 5],
    alpha_formula: AlphaFormula,
}

impl QpSpec {
    pub fn new(p: [f64; 5], alpha_formula: AlphaFormula) -> Result<Self> {
        if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "all p must be positive, got {x}"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "p must sum to 1, got {sum}"
            )));
        }
        Ok(Self { p, alpha_formula })
    }

    /// `p = (p₁, 1/5, 1/5, 1/5, 2/5 − p₁)` for `p₁ ∈ (0, 2/5)`.
    pub fn one_parameter(p1: f64, alpha_formula: AlphaFormula) -> Result<Self> {
        Self::new([p1, 0.2, 0.2, 0.2, 0.4 - p1], alpha_formula)
    }

    pub fn p(&self) -> [f64; 5] {
        self.p
    }

    pub fn alpha_formula(&self) -> AlphaFormula {
        self.alpha_formula
    }

    pub fn alpha(&self) -> f64 {
        let [p1, p2, p3, p4, p5] = self.p;
        match self.alpha_formula {
            AlphaFormula::Example13 => {
                2. / (9. * p1)
                    + 2. / (9. * p2)
                    + 2. / (9. * p3)
                    + 8. / (81. * p4)
                    + 125. / (81. * p5)
            }
            AlphaFormula::Example17 => {
                1. / (2. * p1) + 2. / (5. * p2) + 1. / (5. * p3) + 2. / (5. * p4) + 1. / (2. * p5)
            }
        }
    }
}

/// Local factors of the six product vectors `z₁..z₆` (unnormalized).
pub fn qp_factors() -> [[ComplexVector; 3]; 6] {
    let (e1, e2) = (ket(1., 0.), ket(0., 1.));
    let s = |a: f64, b: f64| ket(a, b);
    [
        [e2.clone(), s(1., 2.), e1.clone()],
        [e2.clone(), s(1., 1.), s(1., 1.)],
        [e1.clone(), e2.clone(), s(1., -1.)],
        [s(1., 1.), e2.clone(), s(1., 1.)],
        [s(1., 2.), e1, e2.clone()],
        [s(1., 1.), s(1., -2.), e2],
    ]
}

/// The six normalized product vectors `z̃ᵢ`.
pub fn qp_vectors() -> [ComplexVector; 6] {
    qp_factors().map(|[a, b, c]| product3(&a, &b, &c).normalize())
}

/// `Q_p = (α Σᵢ₌₁⁵ pᵢ z̃ᵢz̃ᵢ† − z̃₆z̃₆†) / (α − 1)`.
///
/// Fails when the chosen `α` does not give a positive semidefinite rank-four matrix.
pub fn qp_state(spec: &QpSpec) -> Result<MultiQubitState> {
    let z = qp_vectors();
    let alpha = spec.alpha();
    let mut m = ComplexMatrix::zeros(8, 8);
    for (p, zi) in spec.p.iter().zip(&z) {
        m += outer(zi).scale(alpha * p);
    }
    m -= outer(&z[5]);
    let state = MultiQubitState::new(m.unscale(alpha - 1.0), DEFAULT_STATE_TOL)?;
    let rank = numeric_rank(state.matrix(), DEFAULT_RANK_TOL);
    if rank != 4 {
        return Err(Error::SubspaceDimension {
            expected: 4,
            found: rank,
        });
    }
    Ok(state)
}

// ---------------------------------------------------------------------------
// Split-tensor family

/// Vectors `bᵢ` (party 1), `uᵢ` (parties 2, 3), weights `λᵢ` and prefactor `α`.
pub struct Example10Terms {
    pub b: [ComplexVector; 4],
    pub u: [ComplexVector; 4],
    pub weights: [f64; 4],
    pub alpha: f64,
}

pub fn example10_terms(t: Complex64) -> Result<Example10Terms> {
    check_t(t)?;
    let (one, zero) = (r(1.0), r(0.0));
    let col = |e: &[Complex64]| ComplexVector::from_vec(e.to_vec());
    let b = [
        col(&[one, zero]),
        col(&[zero, one]),
        col(&[one, -one]),
        col(&[-t, one]),
    ];
    let u = [
        col(&[zero, one, -one, zero]),
        col(&[-t, zero, zero, one]),
        col(&[-t, one, one, -one]),
        col(&[-t, t, t, -one]),
    ];
    let (at2, omt2) = (t.norm_sqr(), (-t + 1.0).norm_sqr());
    let weights = [at2 * omt2, omt2, at2, 1.0];
    let alpha = 1.0 / (5.0 * at2 * at2 + 10.0 * at2 + 1.0 + (3.0 * at2 + 1.0) * omt2);
    Ok(Example10Terms {
        b,
        u,
        weights,
        alpha,
    })
}

/// The three equal expressions `αΣλᵢ bᵢbᵢ† ⊗ uᵢuᵢ†`, `αΣλᵢ bᵢbᵢ† ⊗ₛ uᵢuᵢ†` and
/// `αΣλᵢ uᵢuᵢ† ⊗ bᵢbᵢ†`.
pub fn example10_expressions(t: Complex64) -> Result<[ComplexMatrix; 3]> {
    let terms = example10_terms(t)?;
    let mut out = [
        ComplexMatrix::zeros(8, 8),
        ComplexMatrix::zeros(8, 8),
        ComplexMatrix::zeros(8, 8),
    ];
    for i in 0..4 {
        let (bb, uu) = (outer(&terms.b[i]), outer(&terms.u[i]));
        let w = terms.alpha * terms.weights[i];
        out[0] += bb.kronecker(&uu).scale(w);
        out[1] += split_tensor(&bb, &uu)?.scale(w);
        out[2] += uu.kronecker(&bb).scale(w);
    }
    Ok(out)
}

pub fn example10_state(t: Complex64) -> Result<MultiQubitState> {
    let [first, ..] = example10_expressions(t)?;
    MultiQubitState::new(first, DEFAULT_STATE_TOL)
}

/// Whether the square-root branch used by the connecting transform has been
/// checked to give the stated identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchStatus {
    /// Real `t ∈ (0, 1)`: all square roots are of positive reals.
    Verified,
    /// Principal branches were used; the identity is not asserted.
    Untested,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectingTransform {
    pub factors: [Mat2; 3],
    pub v: ComplexMatrix,
    pub branch: BranchStatus,
}

/// `V = W₁ ⊗ W₂ ⊗ W₃` taking [`example10_state`] onto a multiple of the
/// default-weight [`type2_state`] with the same `t`.
pub fn example10_connecting_transform(t: Complex64) -> Result<ConnectingTransform> {
    check_t(t)?;
    let s = t.sqrt();
    let root = (-t + 1.0).sqrt();
    let one = r(1.0);
    let w1 = Mat2::new(one, r(0.0), r(0.0), -one);
    let w2 = Mat2::new((s - 1.0) / root, (s - t) / root, one, s);
    let w3 = Mat2::new(one, s, (-s + 1.0) / root, (t - s) / root);
    let dm = |m: &Mat2| ComplexMatrix::from_fn(2, 2, |i, j| m[(i, j)]);
    let v = tensor_all(&[dm(&w1), dm(&w2), dm(&w3)]);
    let branch = if t.im == 0.0 && t.re > 0.0 && t.re < 1.0 {
        BranchStatus::Verified
    } else {
        BranchStatus::Untested
    };
    Ok(ConnectingTransform {
        factors: [w1, w2, w3],
        v,
        branch,
    })
}

pub const I: Complex64 = Complex64::new(0.0, 1.0);
