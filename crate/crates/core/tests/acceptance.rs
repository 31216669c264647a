//! Acceptance criteria 1-8. Each test prints one `ACCEPTANCE <n> ... PASS|FAIL`
//! line with the measured values, then asserts.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tghyper::catalog::{self, lookup_spec, SampleBox};
use tghyper::coord::{
    build_twisted_product, eikonal_residuals, geodesic_integrate, product_grid,
    second_fundamental_form, twisting_ode_residual, LevelSetHypersurface,
};
use tghyper::lie::{LieAlgebra, MetricLieAlgebra, Subspace};
use tghyper::tg::{
    classify_case, frenet_orbit, helix_witness, search_tg_hyperplanes, sl2_recognize,
    tg_subspace_check, CaseTag, SearchConfig,
};
use tghyper::verify::{
    christoffel_agreement, frame_change_checks, gauss_equation_gap, leaf_sff, normal_checks,
    random_unit, rk4_halving_ratio, sample_points, twisted_anchor_gap, twisted_leaf_frenet, Check,
};
use tghyper::Tolerances;

fn e(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

fn v(x: &[f64]) -> DVector<f64> {
    DVector::from_vec(x.to_vec())
}

/// Prints the verdict line and the failing checks, then asserts.
fn verdict(n: u32, title: &str, checks: &[Check]) {
    let pass = checks.iter().all(|c| c.pass);
    println!(
        "ACCEPTANCE {n} {title}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    for c in checks {
        println!(
            "    [{}] {} = {:e} ({} {:?})",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.value,
            c.relation,
            c.bound
        );
    }
    assert!(pass, "acceptance criterion {n} failed");
}

fn sl2(a: f64, b: f64) -> MetricLieAlgebra {
    lookup_spec(&format!("sl2:a={a},b={b}"))
        .unwrap()
        .algebra
        .unwrap()
}

fn unit_box(n: usize) -> SampleBox {
    SampleBox::cube(n, 0.0, 1.0)
}

#[test]
fn criterion_1_sl2_family() {
    let mut checks = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            let tag = format!("sl2({a},{b})");
            let m = sl2(a, b);
            let sub = Subspace::new(DMatrix::from_columns(&[e(3, 1), e(3, 2)])).unwrap();
            let chk = tg_subspace_check(&m, &sub).unwrap();
            checks.push(Check::below(
                format!("{tag} span(E2,E3) residual"),
                chk.residual,
                1e-9,
            ));
            let f = frenet_orbit(&m, &e(3, 0), 2).unwrap();
            checks.push(Check::flag(format!("{tag} order 2"), f.order == 2));
            checks.push(Check::below(
                format!("{tag} |k1-2b|"),
                (f.curvatures[0] - 2.0 * b).abs(),
                1e-10,
            ));
            checks.push(Check::below(
                format!("{tag} |k2-2a|"),
                (f.curvatures[1] - 2.0 * a).abs(),
                1e-10,
            ));
            let w = helix_witness(&m, &e(3, 0)).unwrap();
            checks.push(Check::below(
                format!("{tag} bracket table"),
                w.residuals["bracket_table_residual"],
                1e-9,
            ));
            checks.push(Check::below(
                format!("{tag} |a-a*|"),
                (w.recovered_a - a).abs(),
                1e-12,
            ));
            checks.push(Check::below(
                format!("{tag} |b-b*|"),
                (w.recovered_b - b).abs(),
                1e-12,
            ));
        }
    }
    verdict(1, "sl2 family", &checks);
}

#[test]
fn criterion_2_nonhomogeneous_model() {
    let entry = lookup_spec("nonhomo").unwrap();
    let m = entry.algebra.unwrap();
    let cm = entry.metric.unwrap();
    let mut checks = Vec::new();
    // Basis order (Z, X1, X2, Y).
    let sub = Subspace::new(DMatrix::from_columns(&[e(4, 0), e(4, 3), e(4, 2)])).unwrap();
    let chk = tg_subspace_check(&m, &sub).unwrap();
    checks.push(Check::flag(
        "span(Z,Y,X2) not a subalgebra",
        !chk.totally_geodesic,
    ));
    let w = chk.witness.expect("witness");
    checks.push(Check::flag("witness pair is [Z,X2]", (w.i, w.j) == (0, 2)));
    checks.push(Check::below(
        "X1 component + 1",
        (w.normal_component[1] + 1.0).abs(),
        1e-12,
    ));
    let plane = LevelSetHypersurface::coordinate_hyperplane(4, 1, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for mut p in sample_points(&unit_box(4), 20, &mut rng) {
        p[1] = 0.0;
        worst = worst.max(second_fundamental_form(&cm, &plane, &p).unwrap().max_norm);
    }
    checks.push(Check::below(
        "{x1=0} SFF max_norm over 20 points",
        worst,
        1e-8,
    ));
    verdict(2, "nonhomogeneous model", &checks);
}

fn same_normals(found: &[Vec<f64>], expected: &[DVector<f64>]) -> bool {
    found.len() == expected.len()
        && found
            .iter()
            .zip(expected)
            .all(|(f, x)| (DVector::from_vec(f.clone()) - x).norm() < 1e-8)
}

#[test]
fn criterion_3_search_suite() {
    let cfg = SearchConfig::default();
    let mut checks = Vec::new();
    for (label, m, expected) in [
        ("sl2(1,1)", sl2(1.0, 1.0), e(3, 0)),
        (
            "nonhomo",
            lookup_spec("nonhomo").unwrap().algebra.unwrap(),
            e(4, 3),
        ),
    ] {
        let r = search_tg_hyperplanes(&m, &cfg);
        println!(
            "    {label}: normals {:?} residuals {:?}",
            r.normals, r.residuals
        );
        checks.push(Check::at_most(
            format!("{label} starts"),
            cfg.seeds as f64,
            64.0,
        ));
        checks.push(Check::flag(
            format!("{label} found exactly one normal pair"),
            same_normals(&r.normals, &[expected]),
        ));
        let worst = r.residuals.iter().fold(0.0f64, |a, x| a.max(*x));
        checks.push(Check::below(format!("{label} residuals"), worst, 1e-10));
        checks.push(Check::flag(
            format!("{label} deterministic"),
            search_tg_hyperplanes(&m, &cfg) == r,
        ));
    }
    verdict(3, "search suite", &checks);
}

#[test]
fn criterion_4_classification_suite() {
    let mut checks = Vec::new();
    let line = MetricLieAlgebra::orthonormal(LieAlgebra::abelian(2).unwrap());
    let line1 = MetricLieAlgebra::orthonormal(LieAlgebra::from_brackets(2, &[]).unwrap());
    // g + R with T along the abelian factor.
    for (label, g) in [
        (
            "abelian(3)+R",
            MetricLieAlgebra::orthonormal(LieAlgebra::abelian(3).unwrap()),
        ),
        ("sl2(1,1)+R^2", sl2(1.0, 1.0)),
        (
            "nonhomo+R^2",
            lookup_spec("nonhomo").unwrap().algebra.unwrap(),
        ),
    ] {
        let factor = if label.ends_with("R^2") {
            &line
        } else {
            &line1
        };
        let m = g.direct_sum(factor).unwrap();
        let t = e(m.dim(), m.dim() - 1);
        let c = classify_case(&m, &t).unwrap();
        checks.push(Check::flag(
            format!("{label} GeodesicNormal"),
            c.case_tag == CaseTag::GeodesicNormal,
        ));
    }
    let nh = lookup_spec("nonhomo").unwrap().algebra.unwrap();
    let c = classify_case(&nh, &e(4, 3)).unwrap();
    checks.push(Check::flag(
        "nonhomo Y CircleNormal",
        c.case_tag == CaseTag::CircleNormal,
    ));
    checks.push(Check::below(
        "nonhomo Y |k1-2|",
        (c.frenet.curvatures[0] - 2.0).abs(),
        1e-10,
    ));
    let m = sl2(1.0, 2.0).direct_sum(&line).unwrap();
    let c = classify_case(&m, &e(5, 0)).unwrap();
    checks.push(Check::flag(
        "sl2(1,2)+R^2 HelixOrderTwo",
        c.case_tag == CaseTag::HelixOrderTwo,
    ));
    let w = c.witness.expect("full witness");
    checks.push(Check::flag("ideal has dimension 2", w.ideal_dim == 2));
    checks.push(Check::below(
        "ideal_residual",
        w.residuals["ideal_residual"],
        1e-10,
    ));
    let rec = sl2_recognize(&w.quotient_tensor(), &DMatrix::identity(3, 3)).unwrap();
    checks.push(Check::below("quotient |a-1|", (rec.a - 1.0).abs(), 1e-8));
    checks.push(Check::below("quotient |b-2|", (rec.b - 2.0).abs(), 1e-8));
    verdict(4, "classification suite", &checks);
}

#[test]
fn criterion_5_twisted_product_suite() {
    let tol = Tolerances::default();
    let mut checks = Vec::new();
    for kappa in [0.5, 1.0, 2.0] {
        let spec = catalog::twisted_h2_polar(kappa).unwrap();
        let cm = build_twisted_product(&spec);
        // 50 x 50 grid in (t, r, theta): 50 t-values times 50 base points with
        // r outside the excluded disc around the pole.
        let base: Vec<DVector<f64>> = (0..50)
            .map(|i| {
                let s = i as f64 / 49.0;
                v(&[tol.anchor_exclusion + 1.5 * s, -3.0 + 6.0 * s])
            })
            .collect();
        let grid = product_grid(-1.0, 1.0, 50, &base);
        checks.push(Check::below(
            format!("kappa={kappa} ode residual"),
            twisting_ode_residual(&spec, &grid),
            1e-10,
        ));
        let eik = eikonal_residuals(&spec, &base).unwrap();
        checks.push(Check::below(
            format!("kappa={kappa} eikonal alpha"),
            eik.alpha,
            1e-12,
        ));
        checks.push(Check::below(
            format!("kappa={kappa} eikonal beta"),
            eik.beta.unwrap_or(f64::NAN),
            1e-12,
        ));
        let f = twisted_leaf_frenet(&cm, &v(&[0.7, 0.3]), &tol).unwrap();
        let k = |i: usize| f.curvatures.get(i).copied().unwrap_or(f64::NAN);
        checks.push(Check::below(
            format!("kappa={kappa} |k1-1|"),
            (k(0) - 1.0).abs(),
            1e-3,
        ));
        checks.push(Check::below(
            format!("kappa={kappa} |k2-kappa|"),
            (k(1) - kappa).abs(),
            1e-3,
        ));
        checks.push(Check::below(
            format!("kappa={kappa} k3"),
            f.truncation_residual,
            1e-4,
        ));
        let leaf_points: Vec<DVector<f64>> = base.iter().step_by(5).cloned().collect();
        checks.push(Check::below(
            format!("kappa={kappa} SFF of t=0"),
            leaf_sff(&cm, &leaf_points, &tol).unwrap(),
            1e-7,
        ));
        checks.push(Check::below(
            format!("kappa={kappa} Gauss equation on t=0"),
            gauss_equation_gap(&spec, &cm, &leaf_points).unwrap(),
            1e-5,
        ));
    }
    verdict(5, "twisted-product suite", &checks);
}

#[test]
fn criterion_6_cross_engine_oracle() {
    let mut checks = Vec::new();
    let cm = lookup_spec("twisted-h2:kappa=2").unwrap().metric.unwrap();
    let planes = [
        (v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])),
        (v(&[1.0, 0.0, 0.0]), v(&[0.0, 0.0, 1.0])),
        (v(&[0.3, 1.0, -0.5]), v(&[1.0, 0.2, 0.7])),
    ];
    checks.push(Check::below(
        "twisted-h2(2) vs sl2(1,0.5) sectional, 3 planes",
        twisted_anchor_gap(&cm, 2.0, &planes).unwrap(),
        1e-6,
    ));
    let nh = lookup_spec("nonhomo").unwrap().metric.unwrap();
    let tr = geodesic_integrate(&nh, &DVector::zeros(4), &e(4, 0), 2.0, 1e-3).unwrap();
    let off = tr
        .points
        .iter()
        .map(|p| p[1].abs().max(p[2].abs()).max(p[3].abs()))
        .fold(0.0, f64::max);
    checks.push(Check::below("nonhomo z-axis geodesic off-axis", off, 1e-8));
    let along = tr
        .times
        .iter()
        .zip(&tr.points)
        .map(|(t, p)| (p[0] - t).abs())
        .fold(0.0, f64::max);
    checks.push(Check::below(
        "nonhomo z-axis geodesic |z(t)-t|",
        along,
        1e-8,
    ));
    verdict(6, "cross-engine oracle", &checks);
}

#[test]
fn criterion_7_property_suite() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = Vec::new();
    for name in ["sl2", "nonhomo", "heisenberg", "abelian"] {
        let m = lookup_spec(name).unwrap().algebra.unwrap();
        let found = search_tg_hyperplanes(&m, &SearchConfig::default());
        let normals: Vec<DVector<f64>> = if found.continuum_detected {
            (0..3).map(|_| random_unit(m.dim(), &mut rng)).collect()
        } else {
            found.normal_vectors()
        };
        for (i, t) in normals.iter().enumerate() {
            for c in normal_checks(&format!("{name} normal[{i}] "), &m, t, &tol).unwrap() {
                checks.push(c);
            }
        }
        for mut c in frame_change_checks(&m, &normals, 100, &mut rng, &tol).unwrap() {
            c.name = format!("{name} {}", c.name);
            checks.push(c);
        }
    }
    verdict(7, "property suite", &checks);
}

#[test]
fn criterion_8_numerics_suite() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = Vec::new();
    for name in catalog::NAMES {
        let entry = lookup_spec(name).unwrap();
        if let (Some(cm), Some(bx)) = (&entry.metric, &entry.sample_box) {
            let pts = sample_points(bx, 100, &mut rng);
            checks.push(Check::below(
                format!("{name} Christoffel FD vs exact"),
                christoffel_agreement(cm, &pts).unwrap(),
                1e-6,
            ));
        }
    }
    let ratio = rk4_halving_ratio(0.1, &tol).unwrap();
    checks.push(Check::within(
        "RK4 error ratio h=0.1 vs 0.05",
        ratio,
        8.0,
        32.0,
    ));
    let ratio2 = rk4_halving_ratio(0.05, &tol).unwrap();
    checks.push(Check::within(
        "RK4 error ratio h=0.05 vs 0.025",
        ratio2,
        8.0,
        32.0,
    ));
    verdict(8, "numerics suite", &checks);
}
