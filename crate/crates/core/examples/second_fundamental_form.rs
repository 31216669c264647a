//! Second fundamental form of level-set hypersurfaces in a coordinate chart.

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;
use tghyper::coord::{second_fundamental_form, CoordinateMetric, LevelSetHypersurface};

fn main() -> tghyper::Result<()> {
    // diag(1, e^{2z}, e^{2z}, e^{4z}) in (z, x1, x2, y).
    let cm = lookup_spec("nonhomo")?.metric.unwrap();
    let p = DVector::from_vec(vec![0.3, 0.0, -0.2, 0.5]);
    for (i, name) in ["z", "x1", "x2", "y"].iter().enumerate() {
        let h = LevelSetHypersurface::coordinate_hyperplane(4, i, p[i]);
        let s = second_fundamental_form(&cm, &h, &p)?;
        println!(
            "{{{name} = const}}: principal curvatures {:.6?}",
            s.principal_curvatures
        );
    }

    let sphere = LevelSetHypersurface::sphere(DVector::zeros(3), 2.0);
    let q = DVector::from_vec(vec![0.0, 2.0, 0.0]);
    let s = second_fundamental_form(&CoordinateMetric::euclidean(3), &sphere, &q)?;
    println!(
        "euclidean sphere r=2: principal curvatures {:.6?}",
        s.principal_curvatures
    );
    Ok(())
}
