use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{wedge, LieAlgebra, MetricLieAlgebra};
use crate::linalg;

use super::frenet::{frenet_orbit, FrenetData};
use super::helix::{helix_witness, HelixWitness};
use super::subspace::{codazzi_residual, hyperplane_tg_residual};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// Orbits of `T` are geodesics: product candidate.
    GeodesicNormal,
    /// Orbits are circles: warped product candidate.
    CircleNormal,
    /// Orbits are helices of order two: twisted product over sl(2).
    HelixOrderTwo,
    /// Order three or more; never expected for a totally geodesic normal.
    HigherOrder,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::GeodesicNormal => "GeodesicNormal",
            CaseTag::CircleNormal => "CircleNormal",
            CaseTag::HelixOrderTwo => "HelixOrderTwo",
            CaseTag::HigherOrder => "HigherOrder",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub case_tag: CaseTag,
    pub frenet: FrenetData,
    pub witness: Option<HelixWitness>,
    /// Coefficients of the functional `X -> -2 <nabla_T T, X>` on the input
    /// basis (circle normals only).
    pub character_hint: Option<Vec<f64>>,
    /// `max |hint([e_i, e_j])|`; zero when the hint is a character.
    pub character_residual: Option<f64>,
    /// Common eigenvalue of the Jacobi operator `R_T` on `T^⊥`, when it is
    /// a multiple of the identity (geodesic normals only).
    pub eigenvalue_lambda: Option<f64>,
    pub tg_residual: f64,
    pub codazzi_residual: f64,
    /// Largest `||R(T^X) - K(T,X) T^X||` over a Jacobi eigenbasis of `T^⊥`.
    pub eigenvector_residual: f64,
    pub warnings: Vec<String>,
}

/// Jacobi eigenbasis of `T^⊥` and the defect of `T ^ X` as curvature
/// operator eigenvectors. Frame coordinates.
pub(crate) fn jacobi_eigen(
    m: &MetricLieAlgebra,
    t_onb: &DVector<f64>,
) -> (DVector<f64>, Vec<DVector<f64>>, f64) {
    let n = m.dim();
    let r = m.curvature();
    let q = linalg::complement_of_unit(t_onb);
    let qm = linalg::columns(&q, n);
    let j = r.jacobi_operator(t_onb);
    let restricted = qm.transpose() * j * &qm;
    let (vals, vecs) = linalg::sorted_symmetric_eigen(&restricted);
    let xs: Vec<DVector<f64>> = (0..vals.len()).map(|c| &qm * vecs.column(c)).collect();
    let op = r.operator_matrix();
    let mut worst: f64 = 0.0;
    for (x, k) in xs.iter().zip(vals.iter()) {
        let w = wedge(r.pairs(), t_onb, x);
        worst = worst.max((op * &w - *k * &w).norm());
    }
    (vals, xs, worst)
}

/// Classifies a certified totally geodesic normal `T` by the Frenet order of
/// its orbit.
pub fn classify_case(m: &MetricLieAlgebra, t: &DVector<f64>) -> Result<ClassificationReport> {
    let tol = *m.tolerances();
    let tg_residual = hyperplane_tg_residual(m, t)?;
    if tg_residual >= tol.tg {
        return Err(Error::NotTotallyGeodesic {
            residual: tg_residual,
        });
    }
    let n = m.dim();
    let t_onb = m.to_onb(t);
    let frenet = frenet_orbit(m, t, 3.min(n - 1))?;
    let codazzi = codazzi_residual(m, t)?;
    let (jvals, _, eigenvector_residual) = jacobi_eigen(m, &t_onb);
    let mut warnings = Vec::new();
    if frenet.near_zero_warning {
        warnings.push(format!(
            "curvature {:e} lies just below the zero threshold",
            frenet.truncation_residual
        ));
    }
    let mut report = ClassificationReport {
        case_tag: CaseTag::HigherOrder,
        frenet: frenet.clone(),
        witness: None,
        character_hint: None,
        character_residual: None,
        eigenvalue_lambda: None,
        tg_residual,
        codazzi_residual: codazzi,
        eigenvector_residual,
        warnings,
    };
    match frenet.order {
        0 => {
            report.case_tag = CaseTag::GeodesicNormal;
            if jvals.is_empty() {
                report.eigenvalue_lambda = Some(0.0);
            } else if jvals.max() - jvals.min() < 1e-8 && eigenvector_residual < 1e-8 {
                report.eigenvalue_lambda = Some(jvals.mean());
            }
        }
        1 => {
            report.case_tag = CaseTag::CircleNormal;
            let acc = m.connection().apply(&t_onb, &t_onb);
            // Functional coefficients on the input basis: lambda(e_i) = -2 <acc, E(e_i)>.
            let lam_onb = -2.0 * acc;
            let coeffs = DVector::from_fn(n, |i, _| {
                let mut e = DVector::zeros(n);
                e[i] = 1.0;
                lam_onb.dot(&m.to_onb(&e))
            });
            report.character_residual = Some(functional_on_brackets(m.algebra(), &coeffs));
            report.character_hint = Some(coeffs.iter().copied().collect());
        }
        2 => {
            report.case_tag = CaseTag::HelixOrderTwo;
            match helix_witness(m, t) {
                Ok(w) => report.witness = Some(w),
                Err(e) => report.warnings.push(format!("helix witness failed: {e}")),
            }
        }
        _ => {
            report.warnings.push("Frenet order exceeds two".into());
        }
    }
    Ok(report)
}

fn functional_on_brackets(l: &LieAlgebra, coeffs: &DVector<f64>) -> f64 {
    let n = l.dim();
    let c = l.structure_constants();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v: f64 = (0..n).map(|k| c.get(i, j, k) * coeffs[k]).sum();
            worst = worst.max(v.abs());
        }
    }
    worst
}

/// Linear functionals vanishing on `[g, g]`, as coefficient vectors on the
/// input basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterSpace {
    pub basis: Vec<Vec<f64>>,
    /// `dim g - dim [g, g]`.
    pub derived_dim: usize,
    /// `max |lambda([e_i, e_j])|` over the basis.
    pub residual: f64,
}

pub fn character_space(l: &LieAlgebra) -> CharacterSpace {
    character_space_with(l, 1e-10)
}

pub fn character_space_with(l: &LieAlgebra, rank_tol: f64) -> CharacterSpace {
    let n = l.dim();
    let c = l.structure_constants();
    let mut vv = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = DVector::from_fn(n, |k, _| c.get(i, j, k));
            vv += &v * v.transpose();
        }
    }
    let (vals, vecs) = linalg::sorted_symmetric_eigen(&vv);
    let mut basis = Vec::new();
    let mut residual: f64 = 0.0;
    for k in 0..n {
        if vals[k].max(0.0).sqrt() <= rank_tol {
            let mut v: DVector<f64> = vecs.column(k).into_owned();
            if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    v = -v;
                }
            }
            // Snap round-off zeros.
            v.iter_mut().for_each(|x| {
                if x.abs() < 1e-15 {
                    *x = 0.0
                }
            });
            residual = residual.max(functional_on_brackets(l, &v));
            basis.push(v.iter().copied().collect());
        }
    }
    CharacterSpace {
        derived_dim: basis.len(),
        basis,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonhomo() -> LieAlgebra {
        LieAlgebra::from_brackets(
            4,
            &[
                (0, 1, vec![0.0, 1.0, 1.0, 0.0]),
                (0, 2, vec![0.0, -1.0, 1.0, 0.0]),
                (0, 3, vec![0.0, 0.0, 0.0, 2.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn characters() {
        assert_eq!(
            character_space(&LieAlgebra::abelian(3).unwrap()).derived_dim,
            3
        );
        let cs = character_space(&nonhomo());
        assert_eq!(cs.derived_dim, 1);
        assert_eq!(cs.basis[0], vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn nonhomo_y_is_a_circle_normal() {
        let m = MetricLieAlgebra::orthonormal(nonhomo());
        let t = DVector::from_vec(vec![0.0, 0.0, 0.0, 1.0]);
        let r = classify_case(&m, &t).unwrap();
        assert_eq!(r.case_tag, CaseTag::CircleNormal);
        assert!((r.frenet.curvatures[0] - 2.0).abs() < 1e-14);
        assert_eq!(r.character_hint.unwrap(), vec![-4.0, 0.0, 0.0, 0.0]);
        assert_eq!(r.character_residual, Some(0.0));
    }

    #[test]
    fn refuses_non_tg() {
        let m = MetricLieAlgebra::orthonormal(nonhomo());
        let t = DVector::from_vec(vec![0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            classify_case(&m, &t),
            Err(Error::NotTotallyGeodesic { .. })
        ));
    }

    #[test]
    fn abelian_factor_is_geodesic() {
        let m = MetricLieAlgebra::orthonormal(nonhomo())
            .direct_sum(&MetricLieAlgebra::orthonormal(
                LieAlgebra::abelian(2).unwrap(),
            ))
            .unwrap();
        let mut t = DVector::zeros(6);
        t[4] = 1.0;
        let r = classify_case(&m, &t).unwrap();
        assert_eq!(r.case_tag, CaseTag::GeodesicNormal);
        assert_eq!(r.eigenvalue_lambda, Some(0.0));
    }
}
