//! JSON state files: `{dims, matrix, meta, tolerance}` with entries as `[re, im]`.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use pptes::qmat::DEFAULT_STATE_TOL;
use pptes::{ComplexMatrix, MultiQubitState};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

fn default_tolerance() -> f64 {
    DEFAULT_STATE_TOL
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    /// Row-major.
    pub matrix: Vec<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Map<String, Value>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl StateFile {
    pub fn from_state(state: &MultiQubitState, meta: Map<String, Value>) -> Self {
        let m = state.matrix();
        StateFile {
            dims: vec![2; state.qubits()],
            matrix: m
                .row_iter()
                .map(|row| row.iter().copied().collect())
                .collect(),
            meta: Some(meta),
            tolerance: state.tol(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    /// Checks the schema and builds the validated state. `tol` overrides the file's tolerance.
    pub fn to_state(&self, tol: Option<f64>) -> Result<MultiQubitState, CliError> {
        if self.dims.is_empty() || self.dims.iter().any(|&d| d != 2) {
            return Err(CliError::Parse(format!(
                "only qubit systems are supported, got dims {:?}",
                self.dims
            )));
        }
        let n = 1usize << self.dims.len();
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(CliError::Parse(format!(
                "matrix must be {n}x{n} for dims {:?}",
                self.dims
            )));
        }
        let m: ComplexMatrix = DMatrix::from_fn(n, n, |i, j| self.matrix[i][j]);
        MultiQubitState::new(m, tol.unwrap_or(self.tolerance))
            .map_err(|e| CliError::Parse(e.to_string()))
    }
}
