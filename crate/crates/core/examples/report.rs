//! Builds a JSON report the way the command line tool does and checks that
//! its input digest ignores key order.

use serde_json::json;
use tghyper::catalog::lookup_spec;
use tghyper::report::{digest, Report};
use tghyper::tg::hyperplane_tg_residual;
use tghyper::Tolerances;

fn main() -> tghyper::Result<()> {
    let tol = Tolerances::default();
    let input = json!({"builtin": "nonhomo", "normal": [0, 0, 0, 1]});
    let reordered = json!({"normal": [0, 0, 0, 1], "builtin": "nonhomo"});
    assert_eq!(digest(&input), digest(&reordered));

    let m = lookup_spec("nonhomo")?.algebra.unwrap();
    let t = nalgebra::DVector::from_vec(vec![0.0, 0.0, 0.0, 1.0]);
    let mut r = Report::new("tg-check", &input, &tol);
    let res = hyperplane_tg_residual(&m, &t)?;
    r.result = json!({"totally_geodesic": res <= tol.tg});
    r.residual("tg", res);
    println!("{}", r.to_json(false));
    Ok(())
}
