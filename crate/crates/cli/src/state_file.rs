use std::fs;
use std::path::Path;

use qdis_core::{ComplexMatrix, Error, TwoQubitState};
use serde::{Deserialize, Serialize};

use crate::Failure;

/// On-disk density matrix: rows of `[re, im]` pairs in the basis
/// |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub matrix: ComplexMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn new(state: &TwoQubitState, label: Option<String>) -> Self {
        StateFile {
            dim: 4,
            matrix: *state.matrix(),
            label,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("state files always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path, tol: f64) -> Result<(TwoQubitState, Option<String>), Failure> {
        let shown = path.display();
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {shown}: {e}")))?;
        let file: StateFile =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("cannot parse {shown}: {e}")))?;
        if file.dim != file.matrix.dim() {
            return Err(Failure::Input(format!(
                "{shown}: declared dim {} but matrix is {}x{}",
                file.dim,
                file.matrix.dim(),
                file.matrix.dim()
            )));
        }
        if file.dim != 4 {
            return Err(Failure::Input(format!("{shown}: expected a two-qubit state (dim 4), got dim {}", file.dim)));
        }
        let state = TwoQubitState::with_tol(file.matrix, tol).map_err(|e| unphysical(&shown.to_string(), e))?;
        Ok((state, file.label))
    }
}

fn unphysical(source: &str, e: Error) -> Failure {
    let invariant = match e {
        Error::NotHermitian(_) => "hermiticity",
        Error::TraceDeviation(_) => "unit trace",
        Error::NegativeEigenvalue(_) | Error::NotPsd(_) => "positivity",
        other => return Failure::Input(format!("{source}: {other}")),
    };
    Failure::Unphysical(format!("{source}: unphysical state violates {invariant}: {e}"))
}
