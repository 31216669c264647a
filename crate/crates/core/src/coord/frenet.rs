use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::tg::FrenetData;
use crate::tolerances::Tolerances;

use super::metric::{Christoffel, CoordinateMetric};

/// A path sampled at evenly spaced parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub times: Vec<f64>,
    pub points: Vec<DVector<f64>>,
}

impl SampledCurve {
    pub fn from_fn(t0: f64, t1: f64, samples: usize, f: impl Fn(f64) -> DVector<f64>) -> Self {
        let times: Vec<f64> = (0..samples)
            .map(|i| t0 + (t1 - t0) * i as f64 / (samples - 1) as f64)
            .collect();
        let points = times.iter().map(|&t| f(t)).collect();
        Self { times, points }
    }
}

const STENCIL: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];

/// Five-point derivative of `values` (spacing `h`), defined for indices
/// `2..len-2`; output index `j` corresponds to input `j + 2`.
fn derivative(values: &[DVector<f64>], h: f64) -> Vec<DVector<f64>> {
    (2..values.len().saturating_sub(2))
        .map(|i| {
            let mut d = DVector::zeros(values[i].len());
            for (o, w) in STENCIL.iter().enumerate() {
                if *w != 0.0 {
                    d += *w * &values[i + o - 2];
                }
            }
            d / (12.0 * h)
        })
        .collect()
}

struct Estimate {
    curvatures: Vec<f64>,
    frame: Vec<DVector<f64>>,
}

/// Covariant derivatives `V_1 = x'`, `V_{m+1} = D_t V_m`, Gram–Schmidt in
/// `g(x_c)`, and `k_i = |u_{i+1}| / (|u_i| |x'|)` at the centre sample.
fn estimate(
    cm: &CoordinateMetric,
    points: &[DVector<f64>],
    gammas: &[Christoffel],
    h: f64,
    levels: usize,
    assume_unit_speed: bool,
) -> Result<Estimate> {
    let mid = points.len() / 2;
    let v1 = derivative(points, h);
    let mut layers: Vec<Vec<DVector<f64>>> = vec![v1];
    for _ in 1..levels {
        let prev = layers.last().expect("at least one layer");
        let offset = (points.len() - prev.len()) / 2;
        let v1 = &layers[0];
        let off1 = (points.len() - v1.len()) / 2;
        let d = derivative(prev, h);
        let start = offset + 2;
        let next: Vec<DVector<f64>> = d
            .into_iter()
            .enumerate()
            .map(|(j, dv)| {
                let idx = start + j;
                dv + gammas[idx].contract(&v1[idx - off1], &prev[idx - offset])
            })
            .collect();
        layers.push(next);
    }
    let g = cm.gram(&points[mid])?;
    let at_mid = |layer: &Vec<DVector<f64>>| layer[mid - (points.len() - layer.len()) / 2].clone();
    let vs: Vec<DVector<f64>> = layers.iter().map(at_mid).collect();
    let ip = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * &g * b)[0];
    let speed = if assume_unit_speed {
        1.0
    } else {
        ip(&vs[0], &vs[0]).sqrt()
    };
    let mut us: Vec<DVector<f64>> = Vec::new();
    let mut units: Vec<DVector<f64>> = Vec::new();
    let mut norms: Vec<f64> = Vec::new();
    for v in &vs {
        let mut u = v.clone();
        for _ in 0..2 {
            for e in &units {
                let c = ip(e, &u);
                u -= c * e;
            }
        }
        let nu = ip(&u, &u).max(0.0).sqrt();
        norms.push(nu);
        units.push(if nu > 0.0 { &u / nu } else { u.clone() });
        us.push(u);
    }
    let curvatures = (1..norms.len())
        .map(|i| {
            if norms[i - 1] > 0.0 {
                norms[i] / (norms[i - 1] * speed)
            } else {
                0.0
            }
        })
        .collect();
    Ok(Estimate {
        curvatures,
        frame: units,
    })
}

pub fn frenet_numeric(
    cm: &CoordinateMetric,
    curve: &SampledCurve,
    arclength_reparameterize: bool,
) -> Result<FrenetData> {
    frenet_numeric_with(cm, curve, arclength_reparameterize, &Tolerances::default())
}

/// Numeric Frenet data at the middle sample of `curve`.
///
/// With `arclength_reparameterize` the curvatures are normalized by the
/// measured speed, which is equivalent to differentiating in arclength;
/// otherwise the parameter is required to be arclength already (speed 1
/// within `1e-6`). Error bars are the change between sample strides 1 and 2.
pub fn frenet_numeric_with(
    cm: &CoordinateMetric,
    curve: &SampledCurve,
    arclength_reparameterize: bool,
    tol: &Tolerances,
) -> Result<FrenetData> {
    let n = cm.dim();
    let count = curve.points.len();
    if count < 50 || curve.times.len() != count {
        return Err(Error::IrregularCurve {
            reason: format!("need at least 50 samples with matching times, got {count}"),
        });
    }
    if let Some(p) = curve.points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    let h = (curve.times[count - 1] - curve.times[0]) / (count - 1) as f64;
    if !(h > 0.0)
        || curve
            .times
            .windows(2)
            .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0))
    {
        return Err(Error::IrregularCurve {
            reason: "samples must be evenly spaced in increasing order".into(),
        });
    }
    let gammas: Vec<Christoffel> = curve
        .points
        .iter()
        .map(|p| cm.christoffel(p))
        .collect::<Result<_>>()?;
    for (i, v) in derivative(&curve.points, h).iter().enumerate() {
        let speed = cm.norm(&curve.points[i + 2], v)?;
        if speed <= 1e-8 {
            return Err(Error::IrregularCurve {
                reason: format!("speed {speed:e} at sample {}", i + 2),
            });
        }
        if !arclength_reparameterize && (speed - 1.0).abs() > 1e-6 {
            return Err(Error::IrregularCurve {
                reason: format!(
                    "parameter is not arclength (speed {speed} at sample {})",
                    i + 2
                ),
            });
        }
    }
    // Up to V_4, so k_3 is estimated (structurally zero in dimension 3).
    let levels = (n + 1).min(4);
    // Both strides use a window of 2 * 2 * levels + 1 samples about the middle.
    let mid = count / 2;
    let half = 2 * levels;
    let window = |stride: usize| -> Result<(Vec<DVector<f64>>, Vec<Christoffel>)> {
        let reach = stride * half;
        if mid < reach || mid + reach >= count {
            return Err(Error::IrregularCurve {
                reason: "too few samples for nested differences".into(),
            });
        }
        let idx: Vec<usize> = (0..=2 * half).map(|j| mid - reach + stride * j).collect();
        Ok((
            idx.iter().map(|&i| curve.points[i].clone()).collect(),
            idx.iter().map(|&i| gammas[i].clone()).collect(),
        ))
    };
    let (p1, g1) = window(1)?;
    let fine = estimate(cm, &p1, &g1, h, levels, !arclength_reparameterize)?;
    let coarse = match window(2) {
        Ok((p2, g2)) => Some(estimate(
            cm,
            &p2,
            &g2,
            2.0 * h,
            levels,
            !arclength_reparameterize,
        )?),
        Err(_) => None,
    };
    let zero = tol.numeric_frenet_zero;
    let order = fine.curvatures.iter().take_while(|k| **k >= zero).count();
    let truncation = fine.curvatures.get(order).copied().unwrap_or(0.0);
    let errors = coarse.map(|c| {
        fine.curvatures
            .iter()
            .zip(c.curvatures.iter())
            .take(order)
            .map(|(a, b)| (a - b).abs())
            .collect::<Vec<f64>>()
    });
    let frame_vecs: Vec<Vec<f64>> = fine.frame[..=order.min(fine.frame.len() - 1)]
        .iter()
        .map(|v| v.iter().copied().collect())
        .collect();
    Ok(FrenetData {
        order,
        curvatures: fine.curvatures[..order].to_vec(),
        frame: frame_vecs,
        truncation_residual: truncation,
        recursion_residual: 0.0,
        near_zero_warning: truncation >= 0.01 * zero && truncation < zero,
        curvature_errors: errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_line_is_order_zero() {
        let m = CoordinateMetric::euclidean(3);
        let c = SampledCurve::from_fn(0.0, 1.0, 60, |t| DVector::from_vec(vec![t, 2.0 * t, -t]));
        let f = frenet_numeric(&m, &c, true).unwrap();
        assert_eq!(f.order, 0);
    }

    #[test]
    fn circle_curvature() {
        let m = CoordinateMetric::euclidean(2);
        let r = 3.0;
        let c = SampledCurve::from_fn(-1.0, 1.0, 101, |t| {
            DVector::from_vec(vec![r * t.cos(), r * t.sin()])
        });
        let f = frenet_numeric(&m, &c, true).unwrap();
        assert_eq!(f.order, 1);
        assert!((f.curvatures[0] - 1.0 / r).abs() < 1e-4);
        assert!(f.truncation_residual < 1e-8);
        assert!(f.curvature_errors.unwrap()[0] < 1e-4);
    }

    #[test]
    fn non_arclength_parameter_detected() {
        let m = CoordinateMetric::euclidean(2);
        let c = SampledCurve::from_fn(0.0, 1.0, 60, |t| DVector::from_vec(vec![2.0 * t, 0.0]));
        assert!(matches!(
            frenet_numeric(&m, &c, false),
            Err(Error::IrregularCurve { .. })
        ));
        assert_eq!(frenet_numeric(&m, &c, true).unwrap().order, 0);
    }

    #[test]
    fn stationary_curve_is_irregular() {
        let m = CoordinateMetric::euclidean(2);
        let c = SampledCurve::from_fn(0.0, 1.0, 60, |_| DVector::from_vec(vec![1.0, 1.0]));
        assert!(matches!(
            frenet_numeric(&m, &c, true),
            Err(Error::IrregularCurve { .. })
        ));
        let short = SampledCurve::from_fn(0.0, 1.0, 20, |t| DVector::from_vec(vec![t, 0.0]));
        assert!(matches!(
            frenet_numeric(&m, &short, true),
            Err(Error::IrregularCurve { .. })
        ));
    }
}
