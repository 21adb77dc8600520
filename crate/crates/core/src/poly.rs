//! Low-degree complex polynomials: coefficient recovery by sampling and
//! companion-matrix root finding.

use nalgebra::Schur;
use num_complex::Complex64;

use crate::qmat::ComplexMatrix;

/// Coefficients (ascending) of a polynomial of degree at most `degree`,
/// recovered from its values on the circle `|s| = radius` by a discrete
/// Fourier transform.
pub fn interpolate_on_circle<F>(degree: usize, radius: f64, mut f: F) -> Vec<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    let n = degree + 1;
    let nodes: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let values: Vec<Complex64> = nodes.iter().map(|&w| f(w * radius)).collect();
    (0..n)
        .map(|j| {
            let sum: Complex64 = nodes
                .iter()
                .zip(&values)
                .map(|(w, v)| v * w.powu(j as u32).conj())
                .sum();
            sum / (n as f64 * radius.powi(j as i32))
        })
        .collect()
}

pub fn eval(coeffs: &[Complex64], s: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Degree after discarding leading coefficients at most `rel_tol · max|cᵢ|`.
/// `None` when every coefficient is negligible.
pub fn effective_degree(coeffs: &[Complex64], rel_tol: f64) -> Option<usize> {
    let top = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if top == 0.0 {
        return None;
    }
    coeffs.iter().rposition(|c| c.norm() > rel_tol * top)
}

/// Roots of `Σ cᵢ sⁱ` (ascending coefficients, nonzero leading term) as the
/// eigenvalues of the companion matrix, each refined by one Newton step.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut companion = ComplexMatrix::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -coeffs[i] / lead;
    }
    let eig = Schur::new(companion)
        .eigenvalues()
        .expect("complex Schur form is triangular");
    let d = derivative(coeffs);
    eig.iter()
        .map(|&z| {
            let slope = eval(&d, z);
            if slope.norm() > 0.0 {
                let step = eval(coeffs, z) / slope;
                if step.norm().is_finite() {
                    z - step
                } else {
                    z
                }
            } else {
                z
            }
        })
        .collect()
}

/// Collapses roots closer than `tol · (1 + |z|)`.
pub fn merge_close(mut values: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(values.len());
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for z in values {
        if !out
            .iter()
            .any(|&u| (u - z).norm() <= tol * (1.0 + z.norm()))
        {
            out.push(z);
        }
    }
    out
}
