//! Metric Lie algebras and the curvature of left-invariant metrics.
//!
//! All tensors are stored in the orthonormal frame cached on
//! [`MetricLieAlgebra`]; only vectors crossing the public API are in the
//! caller's basis.

mod algebra;
mod connection;
mod curvature;

pub use algebra::{constants_from_brackets, LieAlgebra, MetricLieAlgebra, Subspace};
pub use connection::ConnectionTable;
pub use curvature::CurvatureData;

pub(crate) use curvature::wedge;

use nalgebra::{DMatrix, DVector};

use crate::error::Result;

pub fn bracket(m: &MetricLieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    m.bracket(x, y)
}

pub fn jacobi_residual(l: &LieAlgebra) -> f64 {
    l.jacobi_residual()
}

pub fn levi_civita(m: &MetricLieAlgebra) -> &ConnectionTable {
    m.connection()
}

pub fn curvature_tensor(m: &MetricLieAlgebra) -> &CurvatureData {
    m.curvature()
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of the curvature
/// operator on 2-vectors.
pub fn curvature_operator_eigen(m: &MetricLieAlgebra) -> (DVector<f64>, DMatrix<f64>) {
    let r = m.curvature();
    (r.eigenvalues().clone(), r.eigenvectors().clone())
}

pub fn sectional(m: &MetricLieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    m.sectional(x, y)
}
