//! Numeric Frenet curvatures of a sampled curve in a coordinate chart.

use nalgebra::DVector;
use tghyper::coord::{frenet_numeric, CoordinateMetric, SampledCurve};

fn main() -> tghyper::Result<()> {
    // Circular helix of radius r and pitch c: k1 = r/(r^2+c^2), k2 = c/(r^2+c^2).
    let (r, c) = (2.0_f64, 0.5_f64);
    let s = (r * r + c * c).sqrt();
    let helix = SampledCurve::from_fn(-0.5, 0.5, 201, |t| {
        DVector::from_vec(vec![r * (t / s).cos(), r * (t / s).sin(), c * t / s])
    });
    let f = frenet_numeric(&CoordinateMetric::euclidean(3), &helix, false)?;
    println!("numeric curvatures {:?}", f.curvatures);
    println!("exact             [{}, {}]", r / (s * s), c / (s * s));
    println!("error bars        {:?}", f.curvature_errors);
    Ok(())
}
