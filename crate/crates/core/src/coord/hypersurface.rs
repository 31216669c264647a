use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerances::Tolerances;

use super::metric::{CoordinateMetric, ScalarField};

/// The hypersurface `{h = 0}` of a chart.
#[derive(Debug, Clone)]
pub struct LevelSetHypersurface {
    h: ScalarField,
}

impl LevelSetHypersurface {
    pub fn new(h: ScalarField) -> Self {
        Self { h }
    }

    /// `{x^i = c}`.
    pub fn coordinate_hyperplane(n: usize, i: usize, c: f64) -> Self {
        Self::new(ScalarField::new(
            move |x| x[i] - c,
            move |_| {
                let mut g = DVector::zeros(n);
                g[i] = 1.0;
                g
            },
        ))
    }

    /// Euclidean-coordinate sphere `|x - center| = r`.
    pub fn sphere(center: DVector<f64>, r: f64) -> Self {
        let c2 = center.clone();
        Self::new(ScalarField::new(
            move |x| (x - &center).norm_squared() - r * r,
            move |x| 2.0 * (x - &c2),
        ))
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        self.h.value(x)
    }

    pub fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        self.h.gradient(x)
    }

    /// Coordinate Hessian of `h` by central differences of its gradient.
    fn hessian(&self, x: &DVector<f64>, step: f64) -> DMatrix<f64> {
        let n = x.len();
        let mut hm = DMatrix::zeros(n, n);
        for k in 0..n {
            let h = step * x[k].abs().max(1.0);
            let central = |h: f64| {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                (self.gradient(&xp) - self.gradient(&xm)) / (2.0 * h)
            };
            let d = (4.0 * central(h) - central(2.0 * h)) / 3.0;
            hm.set_column(k, &d);
        }
        0.5 * (&hm + hm.transpose())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondFundamentalForm {
    /// Tangent coordinate vectors spanning `ker dh` (columns).
    pub tangent_frame: Vec<Vec<f64>>,
    /// `-<nabla_{X_a} X_b, xi>` on `tangent_frame`.
    pub matrix: Vec<Vec<f64>>,
    pub induced_metric: Vec<Vec<f64>>,
    /// Eigenvalues of the shape operator (ascending).
    pub principal_curvatures: Vec<f64>,
    /// Largest absolute principal curvature: the largest entry of the form in
    /// its orthonormal eigenframe.
    pub max_norm: f64,
    /// Unit normal `xi = grad h / |grad h|`.
    pub normal: Vec<f64>,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| m.row(r).iter().copied().collect())
        .collect()
}

pub fn second_fundamental_form(
    cm: &CoordinateMetric,
    surface: &LevelSetHypersurface,
    x: &DVector<f64>,
) -> Result<SecondFundamentalForm> {
    second_fundamental_form_with(cm, surface, x, &Tolerances::default())
}

/// `II(X, Y) = Hess h(X, Y) / |grad h|`, which equals `-<nabla_X Y, xi>` for
/// fields tangent to the level set.
pub fn second_fundamental_form_with(
    cm: &CoordinateMetric,
    surface: &LevelSetHypersurface,
    x: &DVector<f64>,
    tol: &Tolerances,
) -> Result<SecondFundamentalForm> {
    let n = cm.dim();
    let value = surface.value(x);
    if value.abs() >= tol.level_set {
        return Err(Error::NotOnSurface { value });
    }
    let dh = surface.gradient(x);
    if dh.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: dh.len(),
        });
    }
    let g = cm.gram(x)?;
    let ginv = cm.inverse(x)?;
    let grad = &ginv * &dh;
    let gnorm = (dh.transpose() * &grad)[0].max(0.0).sqrt();
    if gnorm < tol.gradient_min || dh.norm() < tol.gradient_min {
        return Err(Error::GradientDegenerate { norm: gnorm });
    }
    let xi = &grad / gnorm;
    let gamma = cm.christoffel(x)?;
    let mut hess = surface.hessian(x, tol.fd_step);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += gamma.get(k, i, j) * dh[k];
            }
            hess[(i, j)] -= s;
        }
    }
    let frame = linalg::complement_of_unit(&(&dh / dh.norm()));
    let fm = linalg::columns(&frame, n);
    let form = fm.transpose() * &hess * &fm / gnorm;
    let induced = fm.transpose() * &g * &fm;
    // Shape operator eigenvalues via an induced-orthonormal tangent basis.
    let onb = linalg::gram_schmidt(&frame, &g, 0.0).ok_or(Error::MetricDegenerate {
        reason: "tangent frame is degenerate".into(),
    })?;
    let om = linalg::columns(&onb, n);
    let form_onb = om.transpose() * &hess * &om / gnorm;
    let (principal, _) = linalg::sorted_symmetric_eigen(&form_onb);
    Ok(SecondFundamentalForm {
        tangent_frame: frame.iter().map(|v| v.iter().copied().collect()).collect(),
        matrix: rows(&form),
        induced_metric: rows(&induced),
        max_norm: principal.iter().fold(0.0, |a, v| a.max(v.abs())),
        principal_curvatures: principal.iter().copied().collect(),
        normal: xi.iter().copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_hyperplane_is_flat() {
        let m = CoordinateMetric::euclidean(3);
        let s = LevelSetHypersurface::coordinate_hyperplane(3, 0, 0.0);
        let x = DVector::from_vec(vec![0.0, 0.4, -1.2]);
        assert_eq!(second_fundamental_form(&m, &s, &x).unwrap().max_norm, 0.0);
    }

    #[test]
    fn sphere_is_umbilic() {
        let m = CoordinateMetric::euclidean(3);
        let r = 2.5;
        let s = LevelSetHypersurface::sphere(DVector::zeros(3), r);
        let x = DVector::from_vec(vec![1.5, 0.0, 2.0]);
        let f = second_fundamental_form(&m, &s, &x).unwrap();
        assert!((f.max_norm - 1.0 / r).abs() < 1e-9);
        for a in 0..2 {
            for b in 0..2 {
                assert!((f.matrix[a][b] - f.induced_metric[a][b] / r).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn off_surface_and_degenerate_gradient() {
        let m = CoordinateMetric::euclidean(2);
        let s = LevelSetHypersurface::coordinate_hyperplane(2, 1, 0.0);
        let off = DVector::from_vec(vec![0.0, 0.1]);
        assert!(matches!(
            second_fundamental_form(&m, &s, &off),
            Err(Error::NotOnSurface { .. })
        ));
        let cone = LevelSetHypersurface::new(ScalarField::new(
            |x| x[0] * x[1],
            |x| DVector::from_vec(vec![x[1], x[0]]),
        ));
        assert!(matches!(
            second_fundamental_form(&m, &cone, &DVector::zeros(2)),
            Err(Error::GradientDegenerate { .. })
        ));
    }
}
