use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;

/// Frenet apparatus of a curve: curvatures `k_1..k_p` above the zero
/// threshold and the frame `e_1..e_{p+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrenetData {
    pub order: usize,
    pub curvatures: Vec<f64>,
    /// Input coordinates (algebraic orbits) or chart coordinates (numeric curves).
    pub frame: Vec<Vec<f64>>,
    /// The curvature following `k_p`: below the threshold unless the
    /// iteration was capped by `p_max`.
    pub truncation_residual: f64,
    /// Largest `||nabla_{e_1} e_s + k_{s-1} e_{s-1} - k_s e_{s+1}||` over `s <= p`.
    pub recursion_residual: f64,
    /// Set when the truncating value lies in the ambiguous band just below the
    /// zero threshold.
    pub near_zero_warning: bool,
    /// Per-curvature error estimates (numeric curves only).
    pub curvature_errors: Option<Vec<f64>>,
}

impl FrenetData {
    pub fn frame_vectors(&self) -> Vec<DVector<f64>> {
        self.frame
            .iter()
            .map(|v| DVector::from_vec(v.clone()))
            .collect()
    }
}

/// Frenet data of the one-parameter subgroup `exp(sT)`. The frame extends
/// left-invariantly, so the iteration is purely algebraic:
/// `w_s = nabla_T e_s + k_{s-1} e_{s-1}`, `k_s = ||w_s||`.
pub fn frenet_orbit(m: &MetricLieAlgebra, t: &DVector<f64>, p_max: usize) -> Result<FrenetData> {
    let n = m.dim();
    if p_max > n - 1 {
        return Err(Error::BadParams(format!(
            "p_max = {p_max} exceeds n - 1 = {}",
            n - 1
        )));
    }
    let tol = m.tolerances();
    let t = m.unit_to_onb(t)?;
    let s_op = m.connection().derivative_operator(&t);
    let mut frame: Vec<DVector<f64>> = vec![t];
    let mut ks: Vec<f64> = Vec::new();
    let mut recursion: f64 = 0.0;
    let truncation: f64;
    loop {
        let s = frame.len();
        let mut w = &s_op * &frame[s - 1];
        if s >= 2 {
            w += ks[s - 2] * &frame[s - 2];
        }
        let raw = w.clone();
        for _ in 0..2 {
            for e in &frame {
                let c = e.dot(&w);
                w -= c * e;
            }
        }
        let k = w.norm();
        if k < tol.frenet_zero {
            recursion = recursion.max(raw.norm());
            truncation = k;
            break;
        }
        if ks.len() == p_max {
            truncation = k;
            break;
        }
        let next = w / k;
        recursion = recursion.max((&raw - k * &next).norm());
        ks.push(k);
        frame.push(next);
        if frame.len() > n {
            return Err(Error::BadParams("frame exceeded the dimension".into()));
        }
    }
    Ok(finish(
        m,
        frame,
        ks,
        truncation,
        recursion,
        tol.frenet_warn,
        tol.frenet_zero,
    ))
}

fn finish(
    m: &MetricLieAlgebra,
    frame: Vec<DVector<f64>>,
    ks: Vec<f64>,
    truncation: f64,
    recursion: f64,
    warn: f64,
    zero: f64,
) -> FrenetData {
    FrenetData {
        order: ks.len(),
        curvatures: ks,
        frame: frame
            .iter()
            .map(|v| m.from_onb(v).iter().copied().collect())
            .collect(),
        truncation_residual: truncation,
        recursion_residual: recursion,
        near_zero_warning: truncation >= warn && truncation < zero,
        curvature_errors: None,
    }
}

/// `max_X |<T, [X, T]> - k_1 <N_1, X>|` over the orthonormal frame; `None`
/// for a geodesic orbit.
pub fn curvature_bracket_residual(m: &MetricLieAlgebra, f: &FrenetData) -> Option<f64> {
    if f.order < 1 {
        return None;
    }
    let fr: Vec<DVector<f64>> = f.frame_vectors().iter().map(|v| m.to_onb(v)).collect();
    let (t, n1, k1) = (&fr[0], &fr[1], f.curvatures[0]);
    let n = m.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let mut x = DVector::zeros(n);
        x[i] = 1.0;
        let lhs = t.dot(&m.bracket_onb(&x, t));
        worst = worst.max((lhs - k1 * n1.dot(&x)).abs());
    }
    Some(worst)
}

/// `||N_2 - [T, N_1] / k_2 - (k_1 / k_2) T||`; `None` below order 2.
pub fn binormal_bracket_residual(m: &MetricLieAlgebra, f: &FrenetData) -> Option<f64> {
    if f.order < 2 {
        return None;
    }
    let fr: Vec<DVector<f64>> = f.frame_vectors().iter().map(|v| m.to_onb(v)).collect();
    let (k1, k2) = (f.curvatures[0], f.curvatures[1]);
    let predicted = m.bracket_onb(&fr[0], &fr[1]) / k2 + (k1 / k2) * &fr[0];
    Some((&fr[2] - predicted).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;

    fn e(n: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    /// sl(2) in the orthonormal basis: [E1,E2]=2aE3, [E1,E3]=2bE1-2aE2, [E2,E3]=-2bE2.
    fn sl2(a: f64, b: f64) -> MetricLieAlgebra {
        MetricLieAlgebra::orthonormal(
            LieAlgebra::from_brackets(
                3,
                &[
                    (0, 1, vec![0.0, 0.0, 2.0 * a]),
                    (0, 2, vec![2.0 * b, -2.0 * a, 0.0]),
                    (1, 2, vec![0.0, -2.0 * b, 0.0]),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn abelian_orbits_are_geodesics() {
        let m = MetricLieAlgebra::orthonormal(LieAlgebra::abelian(3).unwrap());
        let f = frenet_orbit(&m, &DVector::from_vec(vec![0.0, 0.6, 0.8]), 2).unwrap();
        assert_eq!(f.order, 0);
        assert_eq!(f.truncation_residual, 0.0);
        assert!(!f.near_zero_warning);
    }

    #[test]
    fn sl2_e1_is_helix_of_order_two() {
        let (a, b) = (1.5, 0.5);
        let m = sl2(a, b);
        let f = frenet_orbit(&m, &e(3, 0), 2).unwrap();
        assert_eq!(f.order, 2);
        assert!((f.curvatures[0] - 2.0 * b).abs() < 1e-14);
        assert!((f.curvatures[1] - 2.0 * a).abs() < 1e-14);
        let fr = f.frame_vectors();
        assert!((&fr[1] + e(3, 2)).norm() < 1e-14);
        assert!((&fr[2] - e(3, 1)).norm() < 1e-14);
        assert!(f.recursion_residual < 1e-13);
        assert!(binormal_bracket_residual(&m, &f).unwrap() < 1e-13);
        assert!(curvature_bracket_residual(&m, &f).unwrap() < 1e-13);
    }

    #[test]
    fn p_max_validated() {
        let m = sl2(1.0, 1.0);
        assert!(matches!(
            frenet_orbit(&m, &e(3, 0), 3),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn capped_orbit_reports_next_curvature() {
        let m = sl2(1.0, 1.0);
        let f = frenet_orbit(&m, &e(3, 0), 1).unwrap();
        assert_eq!(f.order, 1);
        assert!((f.truncation_residual - 2.0).abs() < 1e-14);
    }
}
