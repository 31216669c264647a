//! Totally geodesic test for subspaces of a metric Lie algebra, with the
//! bracket witness when the test fails.

use nalgebra::DVector;
use tghyper::catalog::lookup_spec;
use tghyper::lie::Subspace;
use tghyper::tg::tg_subspace_check;

fn main() -> tghyper::Result<()> {
    let sl2 = lookup_spec("sl2:a=1,b=2")?.algebra.unwrap();
    let span = Subspace::from_vectors(&[v(&[0., 1., 0.]), v(&[0., 0., 1.])], 3)?;
    let r = tg_subspace_check(&sl2, &span)?;
    println!(
        "sl2 span(E2,E3): totally geodesic = {}, residual {:e}",
        r.totally_geodesic, r.residual
    );

    // Basis order (Z, X1, X2, Y).
    let nh = lookup_spec("nonhomo")?.algebra.unwrap();
    let span = Subspace::from_vectors(
        &[
            v(&[1., 0., 0., 0.]),
            v(&[0., 0., 0., 1.]),
            v(&[0., 0., 1., 0.]),
        ],
        4,
    )?;
    let r = tg_subspace_check(&nh, &span)?;
    println!(
        "nonhomo span(Z,Y,X2): totally geodesic = {}",
        r.totally_geodesic
    );
    if let Some(w) = r.witness {
        println!(
            "  witness: [b{}, b{}] has normal part {:?}",
            w.i, w.j, w.normal_component
        );
    }
    Ok(())
}

fn v(x: &[f64]) -> DVector<f64> {
    DVector::from_vec(x.to_vec())
}
