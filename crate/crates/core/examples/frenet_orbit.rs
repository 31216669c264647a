//! Frenet data of the orbit of a unit vector under `X -> nabla_X T`.

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;
use tghyper::tg::{binormal_bracket_residual, curvature_bracket_residual, frenet_orbit};

fn main() -> tghyper::Result<()> {
    for (a, b) in [(0.5, 2.0), (1.0, 1.0), (2.0, 0.5)] {
        let m = lookup_spec(&format!("sl2:a={a},b={b}"))?.algebra.unwrap();
        let t = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let f = frenet_orbit(&m, &t, 2)?;
        println!(
            "sl2({a},{b}): order {} curvatures {:?} truncation {:e}",
            f.order, f.curvatures, f.truncation_residual
        );
        println!(
            "    bracket identities: {:?} {:?}",
            curvature_bracket_residual(&m, &f),
            binormal_bracket_residual(&m, &f)
        );
    }
    Ok(())
}
