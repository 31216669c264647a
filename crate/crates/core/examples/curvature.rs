//! Levi-Civita connection, curvature operator spectrum and sectional
//! curvatures of a left-invariant metric.
//!
//! cargo run --example curvature -- sl2:a=1,b=0.5

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;

fn main() -> tghyper::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sl2:a=1,b=0.5".into());
    let m = lookup_spec(&spec)?.require_algebra()?.clone();
    let n = m.dim();
    let conn = m.connection();
    println!("{spec}: dim {n}");
    println!(
        "torsion residual {:e}",
        conn.torsion_residual(m.onb_constants())
    );
    println!("metric residual  {:e}", conn.metric_residual());

    let curv = m.curvature();
    println!(
        "curvature operator eigenvalues: {:.6?}",
        curv.eigenvalues().as_slice()
    );
    println!("first Bianchi residual {:e}", curv.bianchi_residual());

    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit(n, i), unit(n, j));
            println!("K(e{}, e{}) = {:+.6}", i + 1, j + 1, m.sectional(&x, &y)?);
        }
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}
