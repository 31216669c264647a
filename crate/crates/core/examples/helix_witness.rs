//! Recovers the sl(2) quotient behind an order-two Frenet orbit.

use nalgebra::{DMatrix, DVector};
use tghyper::catalog::lookup_spec;
use tghyper::lie::{LieAlgebra, MetricLieAlgebra};
use tghyper::tg::{helix_witness, sl2_recognize};

fn main() -> tghyper::Result<()> {
    let flat = MetricLieAlgebra::orthonormal(LieAlgebra::abelian(2)?);
    let m = lookup_spec("sl2:a=1.5,b=0.25")?
        .algebra
        .unwrap()
        .direct_sum(&flat)?;
    let mut t = DVector::zeros(5);
    t[0] = 1.0;
    let w = helix_witness(&m, &t)?;
    println!("ideal dimension {}", w.ideal_dim);
    println!("recovered (a, b) = ({}, {})", w.recovered_a, w.recovered_b);
    for (k, v) in &w.residuals {
        println!("  {k} = {v:e}");
    }
    let rec = sl2_recognize(&w.quotient_tensor(), &DMatrix::identity(3, 3))?;
    println!(
        "quotient recognized as sl2({}, {}), frame {:?}",
        rec.a, rec.b, rec.frame
    );
    Ok(())
}
