use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{MetricLieAlgebra, Subspace};
use crate::linalg;

/// Outcome of [`tg_subspace_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TgCheck {
    pub totally_geodesic: bool,
    /// Max of `bracket_residual` and `connection_residual`.
    pub residual: f64,
    /// Largest normal component of `[X, Y]` over orthonormal pairs of `S`.
    pub bracket_residual: f64,
    /// Largest normal component of `nabla_X Y` over orthonormal pairs of `S`.
    pub connection_residual: f64,
    /// The pair of supplied basis vectors whose bracket leaves `S` the most.
    pub witness: Option<BracketWitness>,
}

/// `[s_i, s_j]` for supplied basis columns `i < j`, with its component normal
/// to the subspace. Input coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketWitness {
    pub i: usize,
    pub j: usize,
    pub bracket: Vec<f64>,
    pub normal_component: Vec<f64>,
}

fn frame_basis(m: &MetricLieAlgebra, s: &Subspace) -> Result<Vec<DVector<f64>>> {
    if s.ambient_dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: s.ambient_dim(),
        });
    }
    let vs: Vec<DVector<f64>> = s.vectors().iter().map(|v| m.to_onb(v)).collect();
    let n = m.dim();
    linalg::gram_schmidt(&vs, &DMatrix::identity(n, n), 0.0).ok_or(Error::DegenerateSubspace {
        smallest_singular_value: 0.0,
    })
}

fn normal_part(q: &[DVector<f64>], v: &DVector<f64>) -> DVector<f64> {
    let mut w = v.clone();
    for b in q {
        let c = b.dot(&w);
        w -= c * b;
    }
    w
}

/// Is `S` a totally geodesic subalgebra, i.e. `[S, S] ⊆ S` and
/// `nabla_S S ⊆ S`?
pub fn tg_subspace_check(m: &MetricLieAlgebra, s: &Subspace) -> Result<TgCheck> {
    let q = frame_basis(m, s)?;
    let gamma = m.connection();
    let mut bracket_residual: f64 = 0.0;
    let mut connection_residual: f64 = 0.0;
    for x in &q {
        for y in &q {
            bracket_residual = bracket_residual.max(normal_part(&q, &m.bracket_onb(x, y)).norm());
            connection_residual =
                connection_residual.max(normal_part(&q, &gamma.apply(x, y)).norm());
        }
    }
    let mut witness: Option<(f64, BracketWitness)> = None;
    let cols = s.vectors();
    for i in 0..cols.len() {
        for j in (i + 1)..cols.len() {
            let b = m.bracket(&cols[i], &cols[j])?;
            let nf = normal_part(&q, &m.to_onb(&b));
            let size = nf.norm();
            if size > m.tolerances().tg && witness.as_ref().is_none_or(|(w, _)| size > *w) {
                witness = Some((
                    size,
                    BracketWitness {
                        i,
                        j,
                        bracket: b.iter().copied().collect(),
                        normal_component: m.from_onb(&nf).iter().copied().collect(),
                    },
                ));
            }
        }
    }
    let residual = bracket_residual.max(connection_residual);
    Ok(TgCheck {
        totally_geodesic: residual < m.tolerances().tg,
        residual,
        bracket_residual,
        connection_residual,
        witness: witness.map(|(_, w)| w),
    })
}

/// Matrix `A_ij = <nabla_{E_i} E_j, T>` in the orthonormal frame.
pub(crate) fn normal_form_matrix(m: &MetricLieAlgebra, t_onb: &DVector<f64>) -> DMatrix<f64> {
    m.connection().coefficients().contract3(t_onb)
}

/// The bilinear form `B(X, Y) = <nabla_X Y, T>` on `T^⊥`, in the orthonormal
/// basis of `T^⊥` returned alongside it (frame coordinates).
pub fn hyperplane_form(
    m: &MetricLieAlgebra,
    t: &DVector<f64>,
) -> Result<(DMatrix<f64>, Vec<DVector<f64>>)> {
    let t = m.unit_to_onb(t)?;
    let q = linalg::complement_of_unit(&t);
    let a = normal_form_matrix(m, &t);
    let qm = linalg::columns(&q, m.dim());
    Ok((qm.transpose() * a * &qm, q))
}

/// Operator norm of `B(X, Y) = <nabla_X Y, T>` restricted to `T^⊥`; zero
/// exactly when the left-invariant distribution `T^⊥` is integrable with
/// totally geodesic leaves. Independent of the basis chosen for `T^⊥`.
pub fn hyperplane_tg_residual(m: &MetricLieAlgebra, t: &DVector<f64>) -> Result<f64> {
    let (b, _) = hyperplane_form(m, t)?;
    Ok(spectral_norm(&b))
}

pub(crate) fn spectral_norm(b: &DMatrix<f64>) -> f64 {
    if b.is_empty() {
        return 0.0;
    }
    b.clone().svd(false, false).singular_values.max()
}

/// `max |<R(X, Y) Z, T>|` over orthonormal triples of `T^⊥`.
pub fn codazzi_residual(m: &MetricLieAlgebra, t: &DVector<f64>) -> Result<f64> {
    let t = m.unit_to_onb(t)?;
    let q = linalg::complement_of_unit(&t);
    let r = m.curvature().components();
    let mut worst: f64 = 0.0;
    for x in &q {
        for y in &q {
            for z in &q {
                worst = worst.max(r.eval(x, y, z, &t).abs());
            }
        }
    }
    Ok(worst)
}
