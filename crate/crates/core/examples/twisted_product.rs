//! Twisted product over the hyperbolic plane: twisting ODE, eikonal
//! equations, leaf curvatures, and agreement with sl(2) at the anchor.

use nalgebra::DVector;
use tghyper::catalog::{lookup_spec, twisted_h2_polar};
use tghyper::coord::{
    build_twisted_product, eikonal_residuals, product_grid, twisting_ode_residual,
};
use tghyper::verify::{leaf_sff, twisted_anchor_gap, twisted_leaf_frenet};
use tghyper::Tolerances;

fn main() -> tghyper::Result<()> {
    let tol = Tolerances::default();
    for kappa in [0.5, 1.0, 2.0] {
        let spec = twisted_h2_polar(kappa)?;
        let cm = build_twisted_product(&spec);
        let base: Vec<DVector<f64>> = (0..20)
            .map(|i| DVector::from_vec(vec![0.2 + 0.05 * i as f64, -1.0 + 0.1 * i as f64]))
            .collect();
        let grid = product_grid(-1.0, 1.0, 20, &base);
        let eik = eikonal_residuals(&spec, &base)?;
        let leaf = twisted_leaf_frenet(&cm, &DVector::from_vec(vec![0.7, 0.3]), &tol)?;
        println!("kappa = {kappa}");
        println!(
            "  ODE residual {:e}, eikonal {:e} / {:?}",
            twisting_ode_residual(&spec, &grid),
            eik.alpha,
            eik.beta
        );
        println!("  leaf curve curvatures {:?}", leaf.curvatures);
        println!("  SFF of t = 0: {:e}", leaf_sff(&cm, &base, &tol)?);
    }

    let disk = lookup_spec("twisted-h2:kappa=2")?.metric.unwrap();
    let e = |i: usize| DVector::from_fn(3, |r, _| if r == i { 1.0 } else { 0.0 });
    let planes = [(e(0), e(1)), (e(0), e(2)), (e(1), e(2))];
    println!(
        "anchor vs sl2(1, 0.5): {:e}",
        twisted_anchor_gap(&disk, 2.0, &planes)?
    );
    Ok(())
}
