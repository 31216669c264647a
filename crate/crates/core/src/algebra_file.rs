//! JSON algebra files.
//!
//! ```json
//! {"dim": 3,
//!  "basis": ["E1", "E2", "E3"],
//!  "brackets": [{"i": 0, "j": 1, "coeffs": [0, 0, 2]}],
//!  "gram": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
//! ```
//!
//! Indices are 0-based with `i < j`; omitted pairs bracket to zero.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, MetricLieAlgebra};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub gram: Vec<Vec<f64>>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Writes `m` in its input basis with default basis names `e1..en`.
    pub fn from_algebra(m: &MetricLieAlgebra) -> Self {
        let n = m.dim();
        let c = m.algebra().structure_constants();
        let brackets = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let coeffs: Vec<f64> = (0..n).map(|k| c.get(i, j, k)).collect();
                coeffs
                    .iter()
                    .any(|v| *v != 0.0)
                    .then_some(BracketEntry { i, j, coeffs })
            })
            .collect();
        Self {
            dim: n,
            basis: (1..=n).map(|i| format!("e{i}")).collect(),
            brackets,
            gram: (0..n)
                .map(|i| m.gram().row(i).iter().copied().collect())
                .collect(),
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<MetricLieAlgebra> {
        let n = self.dim;
        if !(LieAlgebra::MIN_DIM..=LieAlgebra::MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if self.basis.len() != n {
            return Err(Error::Syntax(format!(
                "basis has {} names, dim is {n}",
                self.basis.len()
            )));
        }
        for b in &self.brackets {
            if b.i >= b.j || b.j >= n {
                return Err(Error::Syntax(format!(
                    "bracket ({}, {}) needs i < j < {n}",
                    b.i, b.j
                )));
            }
            if b.coeffs.len() != n {
                return Err(Error::Syntax(format!(
                    "bracket ({}, {}) has {} coefficients, expected {n}",
                    b.i,
                    b.j,
                    b.coeffs.len()
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(b) = self.brackets.iter().find(|b| !seen.insert((b.i, b.j))) {
            return Err(Error::Syntax(format!(
                "bracket ({}, {}) listed twice",
                b.i, b.j
            )));
        }
        if self.gram.len() != n || self.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Syntax(format!("gram must be {n}x{n}")));
        }
        let list: Vec<(usize, usize, Vec<f64>)> = self
            .brackets
            .iter()
            .map(|b| (b.i, b.j, b.coeffs.clone()))
            .collect();
        let algebra = LieAlgebra::from_brackets_with_tolerances(n, &list, tol)?;
        let gram = DMatrix::from_fn(n, n, |i, j| self.gram[i][j]);
        MetricLieAlgebra::with_tolerances(algebra, gram, *tol)
    }
}

pub fn parse_algebra_file(text: &str) -> Result<MetricLieAlgebra> {
    parse_algebra_file_with(text, &Tolerances::default())
}

pub fn parse_algebra_file_with(text: &str, tol: &Tolerances) -> Result<MetricLieAlgebra> {
    AlgebraFile::from_json(text)?.build(tol)
}
