//! Seeded sweeps of the Lorentz invariant over random and parametrized states.
//!
//! Sample `i` of a sweep with seed `s` always uses the RNG stream `(s, i)`, so
//! results do not depend on the execution mode or thread count.

use serde::Serialize;

use crate::constructors::{upb_invariant_closed_form, upb_state, UpbSpec};
use crate::exec::Execution;
use crate::lorentz::lorentz_invariant_matrix;
use crate::qmat::{numeric_rank, ComplexMatrix, DEFAULT_RANK_TOL};
use crate::sampling::{random_unit_vector, stream};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantSample {
    pub value: f64,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RangeSummary {
    pub count: usize,
    pub min: f64,
    pub max: f64,
}

impl RangeSummary {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let mut out = RangeSummary {
            count: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        };
        for v in values {
            out.count += 1;
            out.min = out.min.min(v);
            out.max = out.max.max(v);
        }
        out
    }
}

fn sample(m: &ComplexMatrix) -> InvariantSample {
    InvariantSample {
        value: lorentz_invariant_matrix(m)
            .expect("power-of-two dimension")
            .value,
        rank: numeric_rank(m, DEFAULT_RANK_TOL),
    }
}

/// Invariants of `count` Haar-random pure states on `n` qubits.
pub fn pure_state_sweep(
    n: usize,
    count: usize,
    seed: u64,
    exec: Execution,
) -> Vec<InvariantSample> {
    let dim = 1usize << n;
    exec.map_range(count, |i| {
        let xi = random_unit_vector(&mut stream(seed, i), dim);
        sample(&(&xi * xi.adjoint()))
    })
}

/// Invariants of `c ξ₁ξ₁† + (1 − c) ξ₂ξ₂†` with random unit `ξ₁, ξ₂` and `c ∈ (0, 1)`.
pub fn rank_two_sweep(n: usize, count: usize, seed: u64, exec: Execution) -> Vec<InvariantSample> {
    use rand::Rng;
    let dim = 1usize << n;
    exec.map_range(count, |i| {
        let mut rng = stream(seed, i);
        let c1: f64 = rng.random_range(1e-3..1.0 - 1e-3);
        let x1 = random_unit_vector(&mut rng, dim);
        let x2 = random_unit_vector(&mut rng, dim);
        let rho = (&x1 * x1.adjoint()).scale(c1) + (&x2 * x2.adjoint()).scale(1.0 - c1);
        sample(&rho)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UpbGridPoint {
    pub theta: [f64; 3],
    pub direct: f64,
    pub closed_form: f64,
}

/// Direct and closed-form invariants of the UPB states on the interior grid
/// `θ_k = (j + ½)·(π/2)/steps`, `j = 0..steps`.
pub fn upb_invariant_grid(steps: usize, exec: Execution) -> Vec<UpbGridPoint> {
    let h = std::f64::consts::FRAC_PI_2 / steps as f64;
    exec.map_range(steps * steps * steps, |idx| {
        let theta = [idx / (steps * steps), (idx / steps) % steps, idx % steps]
            .map(|j| (j as f64 + 0.5) * h);
        let spec = UpbSpec::new(theta).expect("grid is interior");
        let rho = upb_state(&spec).expect("valid UPB state");
        UpbGridPoint {
            theta,
            direct: lorentz_invariant_matrix(rho.matrix()).expect("8x8").value,
            closed_form: upb_invariant_closed_form(&spec),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps_do_not_depend_on_execution_mode() {
        let a = rank_two_sweep(3, 16, 7, Execution::Sequential);
        let b = rank_two_sweep(3, 16, 7, Execution::Parallel);
        assert_eq!(a, b);
        let g1 = upb_invariant_grid(3, Execution::Sequential);
        let g2 = upb_invariant_grid(3, Execution::Parallel);
        assert_eq!(g1, g2);
    }

    #[test]
    fn small_sweeps_respect_ranges() {
        let odd = RangeSummary::of(
            pure_state_sweep(3, 50, 1, Execution::default())
                .iter()
                .map(|s| s.value),
        );
        assert!(odd.min.abs() < 1e-12 && odd.max.abs() < 1e-12);
        let even = RangeSummary::of(
            pure_state_sweep(2, 50, 1, Execution::default())
                .iter()
                .map(|s| s.value),
        );
        assert!(even.min >= -1e-12 && even.max <= 1.0 + 1e-12);
        let r2 = RangeSummary::of(
            rank_two_sweep(3, 50, 2, Execution::default())
                .iter()
                .map(|s| s.value),
        );
        assert!(r2.min >= -0.5 - 1e-12 && r2.max <= 1e-12);
        assert_eq!(RangeSummary::of([]).count, 0);
    }
}
