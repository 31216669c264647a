//! Case classification of totally geodesic hyperplane normals.

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;
use tghyper::lie::{LieAlgebra, MetricLieAlgebra};
use tghyper::tg::classify_case;

fn main() -> tghyper::Result<()> {
    let line = MetricLieAlgebra::orthonormal(LieAlgebra::abelian(2)?);
    let sl2 = lookup_spec("sl2:a=1,b=2")?.algebra.unwrap();
    let nonhomo = lookup_spec("nonhomo")?.algebra.unwrap();
    let cases = [
        (
            "sl2(1,2) + R^2, T = last factor",
            sl2.direct_sum(&line)?,
            e(5, 4),
        ),
        ("nonhomo, T = Y", nonhomo, e(4, 3)),
        ("sl2(1,2) + R^2, T = E1", sl2.direct_sum(&line)?, e(5, 0)),
    ];
    for (label, m, t) in cases {
        let c = classify_case(&m, &t)?;
        println!("{label}: {:?}", c.case_tag);
        println!("    curvatures {:?}", c.frenet.curvatures);
        if let Some(h) = c.character_hint {
            println!("    character hint {h:?}");
        }
        if let Some(lambda) = c.eigenvalue_lambda {
            println!("    Jacobi eigenvalue {lambda}");
        }
        if let Some(w) = c.witness {
            println!(
                "    quotient sl2 with (a, b) = ({}, {})",
                w.recovered_a, w.recovered_b
            );
        }
    }
    Ok(())
}

fn e(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })
}
