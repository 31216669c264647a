use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tghyper::algebra_file::{parse_algebra_file, AlgebraFile};
use tghyper::catalog::lookup_spec;
use tghyper::coord::{
    build_warped_product, second_fundamental_form, CoordinateMetric, LevelSetHypersurface,
    ScalarField,
};
use tghyper::lie::{LieAlgebra, MetricLieAlgebra, Subspace};
use tghyper::report::digest;
use tghyper::tg::{frenet_orbit, helix_witness, tg_subspace_check};
use tghyper::verify::random_spd;
use tghyper::Tolerances;

fn e(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

fn sorted(v: &DVector<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = v.iter().copied().collect();
    out.sort_by(f64::total_cmp);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sl2_family_invariants(a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let m = lookup_spec(&format!("sl2:a={a},b={b}")).unwrap().algebra.unwrap();
        prop_assert!(m.algebra().jacobi_residual() < 1e-12);
        let sub = Subspace::new(DMatrix::from_columns(&[e(3, 1), e(3, 2)])).unwrap();
        prop_assert!(tg_subspace_check(&m, &sub).unwrap().totally_geodesic);
        let f = frenet_orbit(&m, &e(3, 0), 2).unwrap();
        prop_assert_eq!(f.order, 2);
        prop_assert!((f.curvatures[0] - 2.0 * b).abs() < 1e-9);
        prop_assert!((f.curvatures[1] - 2.0 * a).abs() < 1e-9);
        let w = helix_witness(&m, &e(3, 0)).unwrap();
        prop_assert!((w.recovered_a - a).abs() < 1e-9 && (w.recovered_b - b).abs() < 1e-9);
    }

    #[test]
    fn curvature_spectrum_is_frame_invariant(seed in any::<u64>(), which in 0usize..3) {
        let name = ["sl2:a=0.7,b=1.3", "nonhomo", "heisenberg"][which];
        let m = lookup_spec(name).unwrap().algebra.unwrap();
        let n = m.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Any basis with any positive gram describes an isometric algebra once
        // the gram is transported along with it.
        let b = random_spd(n, &mut rng) + DMatrix::from_fn(n, n, |i, j| if i < j { 0.3 } else { 0.0 });
        let moved = m.change_basis(&b).unwrap();
        let (x, y) = (sorted(m.curvature().eigenvalues()), sorted(moved.curvature().eigenvalues()));
        for (p, q) in x.iter().zip(&y) {
            prop_assert!((p - q).abs() < 1e-8 * (1.0 + p.abs()), "{:?} vs {:?}", x, y);
        }
        let (u, v) = (e(n, 0), e(n, 1));
        let (bu, bv) = (b.clone().lu().solve(&u).unwrap(), b.lu().solve(&v).unwrap());
        let k = m.sectional(&u, &v).unwrap();
        prop_assert!((k - moved.sectional(&bu, &bv).unwrap()).abs() < 1e-8 * (1.0 + k.abs()));
    }

    #[test]
    fn digest_ignores_key_order(keys in prop::collection::btree_map("[a-z]{1,6}", -1e6f64..1e6, 1..8)) {
        let forward: serde_json::Map<String, Value> = keys.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect();
        let text: Vec<String> = keys.iter().rev().map(|(k, v)| format!("{:?}:{}", k, Value::from(*v))).collect();
        let backward: Value = serde_json::from_str(&format!("{{{}}}", text.join(","))).unwrap();
        prop_assert_eq!(digest(&Value::Object(forward)), digest(&backward));
    }

    #[test]
    fn algebra_file_round_trip(a in 0.1f64..3.0, b in 0.1f64..3.0, seed in any::<u64>()) {
        let m = lookup_spec(&format!("sl2:a={a},b={b}")).unwrap().algebra.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = MetricLieAlgebra::new(m.algebra().clone(), random_spd(3, &mut rng)).unwrap();
        let back = parse_algebra_file(&AlgebraFile::from_algebra(&m).to_json()).unwrap();
        prop_assert_eq!(back.algebra(), m.algebra());
        prop_assert_eq!(back.gram(), m.gram());
    }

    #[test]
    fn warped_product_slices_are_totally_geodesic(
        c in -1.0f64..1.0, p in -0.8f64..0.8, q in -0.8f64..0.8, s in -1.0f64..1.0,
    ) {
        // R x_f R^2 with log f(u) = c u1 + u2^2 / 2; slices {v = const} are
        // copies of the base.
        let logf = ScalarField::new(
            move |u: &DVector<f64>| c * u[0] + 0.5 * u[1] * u[1],
            move |u: &DVector<f64>| DVector::from_vec(vec![c, u[1]]),
        );
        let cm = build_warped_product(1, &CoordinateMetric::euclidean(2), &logf).unwrap();
        let slice = LevelSetHypersurface::coordinate_hyperplane(3, 0, s);
        let x = DVector::from_vec(vec![s, p, q]);
        prop_assert!(second_fundamental_form(&cm, &slice, &x).unwrap().max_norm < 1e-7);
        // A fibre {u1 = p} is umbilic with principal curvatures -c and 0 in
        // the (v, u2) directions, so it is never geodesic when c != 0.
        let fibre = LevelSetHypersurface::coordinate_hyperplane(3, 1, p);
        let sff = second_fundamental_form(&cm, &fibre, &x).unwrap();
        prop_assert!((sff.max_norm - c.abs()).abs() < 1e-6, "{} vs {}", sff.max_norm, c);
    }

    #[test]
    fn tolerance_overrides(v in 1e-15f64..1.0, grid in 2usize..500) {
        let mut t = Tolerances::default();
        t.set(&format!("tg={v}")).unwrap();
        t.set(&format!("grid={grid}")).unwrap();
        prop_assert_eq!(t.tg, v);
        prop_assert_eq!(t.grid, grid);
        let negative = format!("tg={}", -v);
        prop_assert!(t.set(&negative).is_err());
        prop_assert!(t.set("grid=1").is_err());
        prop_assert!(t.set("no_such_tolerance=1").is_err());
    }

    #[test]
    fn abelian_has_flat_curvature(n in 2usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = MetricLieAlgebra::new(LieAlgebra::abelian(n).unwrap(), random_spd(n, &mut rng)).unwrap();
        prop_assert!(m.curvature().eigenvalues().amax() == 0.0);
    }
}
