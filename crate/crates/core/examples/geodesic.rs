//! RK4 geodesic in the hyperbolic plane, written as CSV, with the
//! error ratio under step halving.

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;
use tghyper::coord::geodesic_integrate;
use tghyper::verify::{hyperbolic_exact_geodesic, rk4_halving_ratio};
use tghyper::Tolerances;

fn main() -> tghyper::Result<()> {
    let cm = lookup_spec("hyperbolic2")?.metric.unwrap();
    let x0 = DVector::from_vec(vec![0.8, 0.3]);
    let v0 = DVector::from_vec(vec![0.6, 0.9]);
    let tr = geodesic_integrate(&cm, &x0, &v0, 1.0, 0.01)?;
    let exact = hyperbolic_exact_geodesic(&x0, &v0, 1.0);
    println!("endpoint {:.10?}", tr.endpoint().as_slice());
    println!("exact    {:.10?}", exact.as_slice());
    println!(
        "halving ratio {:.3}",
        rk4_halving_ratio(0.1, &Tolerances::default())?
    );

    let path = std::env::temp_dir().join("tghyper_geodesic.csv");
    tr.write_csv(std::fs::File::create(&path)?)?;
    println!("trajectory written to {}", path.display());
    Ok(())
}
