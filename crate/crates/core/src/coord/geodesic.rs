use std::io::Write;

use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

use super::metric::CoordinateMetric;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicTrajectory {
    pub step: f64,
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub initial_speed: f64,
    /// `max |speed(t) - speed(0)|`.
    pub max_speed_drift: f64,
}

impl GeodesicTrajectory {
    pub fn endpoint(&self) -> DVector<f64> {
        DVector::from_vec(self.points.last().cloned().unwrap_or_default())
    }

    /// CSV with columns `t, x1..xn, v1..vn`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let n = self.points.first().map_or(0, |p| p.len());
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["t".to_string()];
        header.extend((1..=n).map(|i| format!("x{i}")));
        header.extend((1..=n).map(|i| format!("v{i}")));
        out.write_record(&header).map_err(csv_err)?;
        for ((t, x), v) in self.times.iter().zip(&self.points).zip(&self.velocities) {
            let mut row = vec![t.to_string()];
            row.extend(x.iter().map(|c| c.to_string()));
            row.extend(v.iter().map(|c| c.to_string()));
            out.write_record(&row).map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn geodesic_integrate(
    cm: &CoordinateMetric,
    x0: &DVector<f64>,
    v0: &DVector<f64>,
    duration: f64,
    h: f64,
) -> Result<GeodesicTrajectory> {
    geodesic_integrate_with(cm, x0, v0, duration, h, &Tolerances::default())
}

/// Fixed-step RK4 on `x'' = -Gamma(x)(x', x')`. The step is shrunk to divide
/// `duration` evenly; a step is rejected when the relative speed drift
/// exceeds `tol.speed_drift`.
pub fn geodesic_integrate_with(
    cm: &CoordinateMetric,
    x0: &DVector<f64>,
    v0: &DVector<f64>,
    duration: f64,
    h: f64,
    tol: &Tolerances,
) -> Result<GeodesicTrajectory> {
    let n = cm.dim();
    for v in [x0, v0] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    if !(h > 0.0) || !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::BadParams(format!(
            "need h > 0 and duration >= 0 (h = {h}, duration = {duration})"
        )));
    }
    let speed0 = cm.norm(x0, v0)?;
    if speed0 <= 0.0 {
        return Err(Error::BadParams("initial velocity has zero length".into()));
    }
    let steps = ((duration / h).ceil() as usize).max(1);
    let h = duration / steps as f64;
    let accel = |x: &DVector<f64>, v: &DVector<f64>| -> Result<DVector<f64>> {
        Ok(-cm.christoffel(x)?.contract(v, v))
    };
    let mut x = x0.clone();
    let mut v = v0.clone();
    let mut traj = GeodesicTrajectory {
        step: h,
        times: vec![0.0],
        points: vec![x.iter().copied().collect()],
        velocities: vec![v.iter().copied().collect()],
        initial_speed: speed0,
        max_speed_drift: 0.0,
    };
    for s in 0..steps {
        let k1x = v.clone();
        let k1v = accel(&x, &v)?;
        let x2 = &x + 0.5 * h * &k1x;
        let v2 = &v + 0.5 * h * &k1v;
        let k2v = accel(&x2, &v2)?;
        let x3 = &x + 0.5 * h * &v2;
        let v3 = &v + 0.5 * h * &k2v;
        let k3v = accel(&x3, &v3)?;
        let x4 = &x + h * &v3;
        let v4 = &v + h * &k3v;
        let k4v = accel(&x4, &v4)?;
        x += h / 6.0 * (&k1x + 2.0 * &v2 + 2.0 * &v3 + &v4);
        v += h / 6.0 * (&k1v + 2.0 * &k2v + 2.0 * &k3v + &k4v);
        let t = (s + 1) as f64 * h;
        let speed = cm.norm(&x, &v)?;
        let drift = (speed - speed0).abs();
        if drift / speed0 > tol.speed_drift {
            return Err(Error::StepRejected { t, drift });
        }
        traj.max_speed_drift = traj.max_speed_drift.max(drift);
        traj.times.push(t);
        traj.points.push(x.iter().copied().collect());
        traj.velocities.push(v.iter().copied().collect());
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_straight_line() {
        let m = CoordinateMetric::euclidean(3);
        let x0 = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let v0 = DVector::from_vec(vec![0.3, 0.4, -1.0]);
        let tr = geodesic_integrate(&m, &x0, &v0, 2.0, 0.1).unwrap();
        assert!((tr.endpoint() - (&x0 + 2.0 * &v0)).norm() < 1e-12);
        assert_eq!(tr.times.len(), 21);
    }

    #[test]
    fn zero_velocity_rejected() {
        let m = CoordinateMetric::euclidean(2);
        let z = DVector::zeros(2);
        assert!(matches!(
            geodesic_integrate(&m, &z, &z, 1.0, 0.1),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let m = CoordinateMetric::euclidean(2);
        let tr = geodesic_integrate(
            &m,
            &DVector::zeros(2),
            &DVector::from_vec(vec![1.0, 0.0]),
            0.5,
            0.25,
        )
        .unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x1,x2,v1,v2");
        assert_eq!(lines[1], "0,0,0,1,0");
        assert_eq!(lines.len(), 4);
    }
}
