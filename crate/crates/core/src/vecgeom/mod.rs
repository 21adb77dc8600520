//! Geometry of four pairwise independent vectors in ℂ².
//!
//! Any such quadruple can be brought by an invertible `W` and a diagonal
//! rescaling `D` to the columns `((1,0), (0,1), (1,1), (t,1))`, where `t` is
//! the cross-ratio of the four determinants. Reordering the vectors moves `t`
//! around its anharmonic orbit of (at most) six values.

mod bell;

pub use bell::{
    bell_matrix, bell_permutation_unitary, bell_transform, bell_vectors, epsilon_pairing_residual,
    matrixize, vectorize, BellPermutation, BellTransform, DEFAULT_BELL_TOL,
};

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Vec2 = Vector2<Complex64>;
pub type Mat2 = Matrix2<Complex64>;

/// Relative threshold for `|det(xᵢ, xⱼ)| / (‖xᵢ‖‖xⱼ‖)` below which two vectors count as dependent.
pub const DEFAULT_INDEPENDENCE_TOL: f64 = 1e-10;

/// Cross-ratios closer than this to 0 or 1 are rejected.
pub const DEGENERATE_T_TOL: f64 = 1e-8;

pub fn det2(a: &Vec2, b: &Vec2) -> Complex64 {
    a[0] * b[1] - a[1] * b[0]
}

/// `|Im t| ≤ 1e-8 (1 + |Re t|)`.
pub fn is_real(t: Complex64) -> bool {
    t.im.abs() <= 1e-8 * (1.0 + t.re.abs())
}

fn check_t(t: Complex64) -> Result<()> {
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "cross-ratio {t} is not finite"
        )));
    }
    if t.norm() <= DEGENERATE_T_TOL || (t - 1.0).norm() <= DEGENERATE_T_TOL {
        return Err(Error::DegenerateCrossRatio(t));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorQuadruple([Vec2; 4]);

impl VectorQuadruple {
    pub fn new(vectors: [Vec2; 4]) -> Result<Self> {
        Self::with_tol(vectors, DEFAULT_INDEPENDENCE_TOL)
    }

    pub fn with_tol(vectors: [Vec2; 4], tol: f64) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                let scale = vectors[i].norm() * vectors[j].norm();
                let ratio = if scale > 0.0 {
                    det2(&vectors[i], &vectors[j]).norm() / scale
                } else {
                    0.0
                };
                if ratio <= tol {
                    return Err(Error::LinearlyDependent { i, j, ratio });
                }
            }
        }
        Ok(Self(vectors))
    }

    /// Quadruple from the columns of a 2×4 row-major array.
    pub fn from_columns(rows: [[Complex64; 4]; 2]) -> Result<Self> {
        Self::new(std::array::from_fn(|k| Vec2::new(rows[0][k], rows[1][k])))
    }

    pub fn vectors(&self) -> &[Vec2; 4] {
        &self.0
    }

    /// `(x_{σ(0)}, ..., x_{σ(3)})`.
    pub fn permuted(&self, sigma: [usize; 4]) -> Self {
        Self(std::array::from_fn(|k| self.0[sigma[k]]))
    }

    /// `det(x₁,x₃) det(x₂,x₄) / (det(x₁,x₄) det(x₂,x₃))`.
    pub fn cross_ratio(&self) -> Complex64 {
        let x = &self.0;
        det2(&x[0], &x[2]) * det2(&x[1], &x[3]) / (det2(&x[0], &x[3]) * det2(&x[1], &x[2]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandardForm {
    pub w: Mat2,
    pub d: [Complex64; 4],
    pub t: Complex64,
}

impl StandardForm {
    /// The target columns `((1,0), (0,1), (1,1), (t,1))`.
    pub fn target(&self) -> [Vec2; 4] {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        [
            Vec2::new(one, zero),
            Vec2::new(zero, one),
            Vec2::new(one, one),
            Vec2::new(self.t, one),
        ]
    }

    /// Largest entrywise deviation of `W x D` from the target.
    pub fn residual(&self, q: &VectorQuadruple) -> f64 {
        let target = self.target();
        (0..4)
            .map(|k| (self.w * q.0[k] * self.d[k] - target[k]).camax())
            .fold(0.0, f64::max)
    }
}

/// Brings `q` to standard form following the adjugate construction:
/// `W = diag(t₁, 1) · adj(x₁, x₂)` and a diagonal `D` normalizing each column.
pub fn standard_form(q: &VectorQuadruple) -> Result<StandardForm> {
    let [x1, x2, x3, x4] = q.0;
    let (a, b, c, d) = (x1[0], x1[1], x2[0], x2[1]);
    let (e, f, g, h) = (x3[0], x3[1], x4[0], x4[1]);
    let adj = Mat2::new(d, -c, -b, a);
    let det12 = a * d - b * c;
    let n3 = d * e - c * f;
    let n4 = a * h - b * g;
    let t1 = (a * f - b * e) / n3;
    let t2 = (d * g - c * h) / n4;
    let t = t1 * t2;
    check_t(t)?;
    let w = Mat2::new(
        t1,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ) * adj;
    let d = [1.0 / (det12 * t1), 1.0 / det12, 1.0 / (n3 * t1), 1.0 / n4];
    Ok(StandardForm { w, d, t })
}

/// The six anharmonic images `t, 1/t, 1-t, 1/(1-t), 1-1/t, t/(t-1)`.
pub fn mobius_images(t: Complex64) -> [Complex64; 6] {
    let one = Complex64::new(1.0, 0.0);
    [
        t,
        one / t,
        one - t,
        one / (one - t),
        one - one / t,
        t / (t - one),
    ]
}

/// The orbit of a cross-ratio under reordering of the quadruple.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct CharacteristicSet {
    pub representative: Complex64,
    pub values: [Complex64; 6],
}

/// Default tolerance for comparing orbits: `1e-6 (1 + |z|)`.
pub const DEFAULT_ORBIT_TOL: f64 = 1e-6;

fn near(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

impl CharacteristicSet {
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|&v| near(v, z, tol))
    }

    /// Orbits are equal when either representative lies in the other orbit;
    /// a single member determines the whole orbit.
    pub fn same_as(&self, other: &CharacteristicSet, tol: f64) -> bool {
        self.contains(other.representative, tol) || other.contains(self.representative, tol)
    }

    /// Orbit members with near-duplicates removed.
    pub fn distinct(&self, tol: f64) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for &v in &self.values {
            if !out.iter().any(|&u| near(u, v, tol)) {
                out.push(v);
            }
        }
        out
    }

    /// Applying any of the six maps to any member lands back in the orbit.
    pub fn is_closed(&self, tol: f64) -> bool {
        self.values
            .iter()
            .all(|&v| mobius_images(v).iter().all(|&w| self.contains(w, tol)))
    }
}

pub fn t_orbit(t: Complex64) -> Result<CharacteristicSet> {
    check_t(t)?;
    Ok(CharacteristicSet {
        representative: t,
        values: mobius_images(t),
    })
}

/// Which disjoint pairs of a quadruple can be made simultaneously orthogonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orthogonalizability {
    /// `t < 0`: `x₁ ⊥ x₂` and `x₃ ⊥ x₄`.
    PairingA,
    /// `0 < t < 1`: `x₁ ⊥ x₄` and `x₂ ⊥ x₃`.
    PairingB,
    /// `t > 1`: `x₁ ⊥ x₃` and `x₂ ⊥ x₄`.
    PairingC,
    /// `t` is not real; no invertible map makes two pairs orthogonal.
    None,
}

impl Orthogonalizability {
    /// The two orthogonal pairs (0-based) for this pairing.
    pub fn pairs(self) -> Option<[(usize, usize); 2]> {
        match self {
            Self::PairingA => Some([(0, 1), (2, 3)]),
            Self::PairingB => Some([(0, 3), (1, 2)]),
            Self::PairingC => Some([(0, 2), (1, 3)]),
            Self::None => None,
        }
    }
}

pub fn orthogonalizability(t: Complex64) -> Result<Orthogonalizability> {
    check_t(t)?;
    if !is_real(t) {
        return Ok(Orthogonalizability::None);
    }
    Ok(if t.re < 0.0 {
        Orthogonalizability::PairingA
    } else if t.re < 1.0 {
        Orthogonalizability::PairingB
    } else {
        Orthogonalizability::PairingC
    })
}

/// An invertible `V` making the pairs named by [`orthogonalizability`]
/// orthogonal, or `None` when the cross-ratio is not real.
///
/// The quadruple is reordered so that the wanted pairs come first and second,
/// which turns the cross-ratio negative; `diag(1, √-t)` applied after the
/// standard form then does the job.
pub fn orthogonalizing_transform(q: &VectorQuadruple) -> Result<Option<Mat2>> {
    let t = standard_form(q)?.t;
    let sigma = match orthogonalizability(t)? {
        Orthogonalizability::PairingA => [0, 1, 2, 3],
        Orthogonalizability::PairingB => [0, 3, 1, 2],
        Orthogonalizability::PairingC => [0, 2, 1, 3],
        Orthogonalizability::None => return Ok(None),
    };
    let sf = standard_form(&q.permuted(sigma))?;
    let scale = Complex64::new((-sf.t.re).max(0.0).sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(Some(
        Mat2::new(Complex64::new(1.0, 0.0), zero, zero, scale) * sf.w,
    ))
}
