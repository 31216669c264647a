//! Self-verification ledger for the catalog.
//!
//! Each catalog entry runs a fixed battery of residual checks with
//! deterministic sample points. A [`Check`] records the value, the bound it
//! was compared against and whether it passed.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, SampleBox};
use crate::coord::{
    build_twisted_product, build_warped_product, eikonal_residuals, frenet_numeric_with,
    geodesic_integrate_with, product_grid, second_fundamental_form_with, spiral_points,
    twisting_ode_residual, CoordinateMetric, LevelSetHypersurface, SampledCurve, ScalarField,
    TwistedProductSpec,
};
use crate::error::Result;
use crate::lie::{LieAlgebra, MetricLieAlgebra, Subspace};
use crate::tg::{
    binormal_bracket_residual, classify_case, codazzi_residual, curvature_bracket_residual,
    frenet_orbit, helix_witness, search_tg_hyperplanes, tg_subspace_check, CaseTag, SearchConfig,
};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"<"`, `"<="`, `">="`, `"in"` or `"=="`.
    pub relation: &'static str,
    pub bound: Vec<f64>,
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: "<",
            bound: vec![bound],
            pass: value < bound,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: "<=",
            bound: vec![bound],
            pass: value <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: ">=",
            bound: vec![bound],
            pass: value >= bound,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: "in",
            bound: vec![lo, hi],
            pass: (lo..=hi).contains(&value),
        }
    }

    /// Boolean check; the value is 1 for true.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            relation: "==",
            bound: vec![1.0],
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryLedger {
    pub entry: String,
    pub checks: Vec<Check>,
    /// Set when the battery could not run to completion.
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyLedger {
    pub entries: Vec<EntryLedger>,
    pub pass: bool,
}

fn e(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

fn v(x: &[f64]) -> DVector<f64> {
    DVector::from_vec(x.to_vec())
}

fn rng(tag: &str) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    for (i, b) in tag.bytes().enumerate() {
        seed[i % 32] ^= b;
    }
    ChaCha8Rng::from_seed(seed)
}

pub fn sample_points(bx: &SampleBox, count: usize, rng: &mut ChaCha8Rng) -> Vec<DVector<f64>> {
    let n = bx.lo.len();
    (0..count)
        .map(|_| bx.point(&DVector::from_fn(n, |_, _| rng.random::<f64>())))
        .collect()
}

pub fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let x: DVector<f64> = DVector::from_fn(n, |_, _| StandardNormal.sample(rng));
    x.normalize()
}

/// Orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g: DMatrix<f64> = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    g.qr().q()
}

/// `A A^T + I/2` with Gaussian `A / sqrt(n)`.
pub fn random_spd(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a: DMatrix<f64> =
        DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng)) / (n as f64).sqrt();
    let s = &a * a.transpose() + DMatrix::identity(n, n) * 0.5;
    0.5 * (&s + s.transpose())
}

/// Construction, connection and curvature identities of a metric Lie algebra.
pub fn algebra_identity_checks(prefix: &str, m: &MetricLieAlgebra, tol: &Tolerances) -> Vec<Check> {
    let c = m.onb_constants();
    let conn = m.connection();
    let r = m.curvature();
    vec![
        Check::at_most(
            format!("{prefix}jacobi"),
            m.algebra().jacobi_residual(),
            tol.jacobi,
        ),
        Check::below(format!("{prefix}torsion"), conn.torsion_residual(c), 1e-12),
        Check::below(
            format!("{prefix}metric_compatibility"),
            conn.metric_residual(),
            1e-12,
        ),
        Check::below(
            format!("{prefix}curvature_symmetries"),
            r.symmetry_residual(),
            1e-10,
        ),
        Check::below(
            format!("{prefix}first_bianchi"),
            r.bianchi_residual(),
            1e-10,
        ),
        Check::below(
            format!("{prefix}operator_symmetry"),
            r.operator_symmetry_residual(),
            1e-10,
        ),
        Check::below(
            format!("{prefix}operator_reconstruction"),
            r.reconstruction_residual(),
            1e-10,
        ),
    ]
}

/// Residual checks attached to one totally geodesic normal `t` (input
/// coordinates, unit length).
pub fn normal_checks(
    prefix: &str,
    m: &MetricLieAlgebra,
    t: &DVector<f64>,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let mut out = vec![
        Check::below(
            format!("{prefix}hyperplane"),
            crate::tg::hyperplane_tg_residual(m, t)?,
            1e-10,
        ),
        Check::below(format!("{prefix}codazzi"), codazzi_residual(m, t)?, 1e-9),
    ];
    let f = frenet_orbit(m, t, 3.min(m.dim() - 1))?;
    if let Some(r) = curvature_bracket_residual(m, &f) {
        out.push(Check::below(format!("{prefix}curvature_bracket"), r, 1e-9));
    }
    if let Some(r) = binormal_bracket_residual(m, &f) {
        out.push(Check::below(format!("{prefix}binormal_bracket"), r, 1e-9));
    }
    out.push(Check::below(
        format!("{prefix}frenet_truncation"),
        f.truncation_residual,
        tol.frenet_zero,
    ));
    let cls = classify_case(m, t)?;
    out.push(Check::flag(
        format!("{prefix}classified_{}", cls.case_tag.as_str()),
        cls.case_tag != CaseTag::HigherOrder,
    ));
    Ok(out)
}

fn search_checks(
    m: &MetricLieAlgebra,
    tol: &Tolerances,
) -> Result<(Vec<Check>, Vec<DVector<f64>>, bool)> {
    let cfg = SearchConfig {
        threshold: tol.search,
        dedup_angle: tol.dedup_angle,
        ..SearchConfig::default()
    };
    let found = search_tg_hyperplanes(m, &cfg);
    let mut out = vec![Check::at_least(
        "search.normals_found",
        found.normals.len() as f64,
        0.0,
    )];
    let worst = found.residuals.iter().fold(0.0f64, |a, r| a.max(*r));
    out.push(Check::below("search.worst_residual", worst, 1e-10));
    let again = search_tg_hyperplanes(m, &cfg);
    out.push(Check::flag("search.deterministic", again == found));
    let normals = found.normal_vectors();
    if !found.continuum_detected {
        for (i, t) in normals.iter().enumerate() {
            out.extend(normal_checks(&format!("normal[{i}]."), m, t, tol)?);
        }
    }
    Ok((out, normals, found.continuum_detected))
}

/// Isometric re-presentations `f = B e` with `B = Q S` (random orthogonal
/// `Q`, random SPD `S`) and Gram `B^T G B`; the given normals are mapped along
/// and must stay certified.
pub fn frame_change_checks(
    m: &MetricLieAlgebra,
    normals: &[DVector<f64>],
    trials: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let n = m.dim();
    let mut worst = [0.0f64; 7];
    let mut worst_normal = [0.0f64; 4];
    for _ in 0..trials {
        let b = random_orthogonal(n, rng) * random_spd(n, rng);
        let m2 = m.change_basis(&b)?;
        for (w, c) in worst.iter_mut().zip(algebra_identity_checks("", &m2, tol)) {
            *w = w.max(c.value);
        }
        let binv = b.clone().try_inverse().expect("Q S is invertible");
        for t in normals {
            let t2 = &binv * t;
            let t2 = &t2 / m2.norm(&t2);
            worst_normal[0] = worst_normal[0].max(crate::tg::hyperplane_tg_residual(&m2, &t2)?);
            worst_normal[1] = worst_normal[1].max(codazzi_residual(&m2, &t2)?);
            let f = frenet_orbit(&m2, &t2, 3.min(n - 1))?;
            worst_normal[2] =
                worst_normal[2].max(curvature_bracket_residual(&m2, &f).unwrap_or(0.0));
            worst_normal[3] =
                worst_normal[3].max(binormal_bracket_residual(&m2, &f).unwrap_or(0.0));
        }
        // A non-isometric metric on the same algebra.
        let m3 = MetricLieAlgebra::with_tolerances(m.algebra().clone(), random_spd(n, rng), *tol)?;
        for (w, c) in worst.iter_mut().zip(algebra_identity_checks("", &m3, tol)) {
            *w = w.max(c.value);
        }
    }
    let names = [
        "jacobi",
        "torsion",
        "metric_compatibility",
        "curvature_symmetries",
        "first_bianchi",
        "operator_symmetry",
        "operator_reconstruction",
    ];
    let bounds = [tol.jacobi, 1e-12, 1e-12, 1e-10, 1e-10, 1e-10, 1e-10];
    let mut out: Vec<Check> = names
        .iter()
        .zip(worst.iter().zip(bounds))
        .map(|(nm, (w, b))| Check::below(format!("frames.{nm}"), *w, b))
        .collect();
    if !normals.is_empty() {
        out.push(Check::below("frames.hyperplane", worst_normal[0], 1e-9));
        out.push(Check::below("frames.codazzi", worst_normal[1], 1e-9));
        out.push(Check::below(
            "frames.curvature_bracket",
            worst_normal[2],
            1e-9,
        ));
        out.push(Check::below(
            "frames.binormal_bracket",
            worst_normal[3],
            1e-9,
        ));
    }
    Ok(out)
}

/// `max |Gamma_fd - Gamma_exact|` over the points.
pub fn christoffel_agreement(cm: &CoordinateMetric, points: &[DVector<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        if let Some(exact) = cm.christoffel_exact(p) {
            worst = worst.max(cm.christoffel_fd(p)?.max_abs_diff(&exact?));
        }
    }
    Ok(worst)
}

/// Speed drift per unit time of a unit-speed geodesic integrated for time 1.
pub fn energy_drift(
    cm: &CoordinateMetric,
    x0: &DVector<f64>,
    dir: &DVector<f64>,
    tol: &Tolerances,
) -> Result<f64> {
    let v0 = dir / cm.norm(x0, dir)?;
    Ok(geodesic_integrate_with(cm, x0, &v0, 1.0, tol.rk4_step, tol)?.max_speed_drift)
}

fn coordinate_checks(
    cm: &CoordinateMetric,
    bx: &SampleBox,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let pts = sample_points(bx, 100, rng);
    let mut out = vec![Check::below(
        "christoffel_fd_vs_exact",
        christoffel_agreement(cm, &pts)?,
        1e-6,
    )];
    let x0 = &pts[0];
    let dir = random_unit(cm.dim(), rng);
    out.push(Check::below(
        "energy_drift_per_unit_time",
        energy_drift(cm, x0, &dir, tol)?,
        1e-6,
    ));
    Ok(out)
}

/// Hyperboloid model of `dr^2 + sinh^2 r dtheta^2`: exact geodesic endpoint.
pub fn hyperbolic_exact_geodesic(x0: &DVector<f64>, v0: &DVector<f64>, t: f64) -> DVector<f64> {
    let (r, th) = (x0[0], x0[1]);
    let p = nalgebra::Vector3::new(r.cosh(), r.sinh() * th.cos(), r.sinh() * th.sin());
    let dr = nalgebra::Vector3::new(r.sinh(), r.cosh() * th.cos(), r.cosh() * th.sin());
    let dth = nalgebra::Vector3::new(0.0, -r.sinh() * th.sin(), r.sinh() * th.cos());
    let w = dr * v0[0] + dth * v0[1];
    let s = (v0[0] * v0[0] + (r.sinh() * v0[1]).powi(2)).sqrt();
    let q = p * (s * t).cosh() + w * ((s * t).sinh() / s);
    let theta = q[2].atan2(q[1]);
    // Unwrap toward the starting angle.
    let k = ((th - theta) / std::f64::consts::TAU).round();
    v(&[q[0].acosh(), theta + k * std::f64::consts::TAU])
}

/// RK4 endpoint error ratio `err(h) / err(h/2)` on the hyperbolic plane.
pub fn rk4_halving_ratio(h: f64, tol: &Tolerances) -> Result<f64> {
    let cm = catalog::hyperbolic_polar();
    let x0 = v(&[0.8, 0.3]);
    let v0 = v(&[0.6, 0.9]);
    let exact = hyperbolic_exact_geodesic(&x0, &v0, 1.0);
    let err = |h: f64| -> Result<f64> {
        Ok((geodesic_integrate_with(&cm, &x0, &v0, 1.0, h, tol)?.endpoint() - &exact).norm())
    };
    Ok(err(h)? / err(h / 2.0)?)
}

fn sl2_checks(entry: &CatalogEntry, tol: &Tolerances) -> Result<Vec<Check>> {
    let m = entry.require_algebra()?;
    let (a, b) = (
        entry.params.get("a").copied().unwrap_or(1.0),
        entry.params.get("b").copied().unwrap_or(1.0),
    );
    let mut out = Vec::new();
    let sub = Subspace::new(DMatrix::from_columns(&[e(3, 1), e(3, 2)]))?;
    let chk = tg_subspace_check(m, &sub)?;
    out.push(Check::below(
        "span(E2,E3).tg_residual",
        chk.residual,
        tol.tg,
    ));
    let f = frenet_orbit(m, &e(3, 0), 2)?;
    out.push(Check::flag("E1.frenet_order_2", f.order == 2));
    if f.order == 2 {
        out.push(Check::below(
            "E1.k1_minus_2b",
            (f.curvatures[0] - 2.0 * b).abs(),
            1e-10,
        ));
        out.push(Check::below(
            "E1.k2_minus_2a",
            (f.curvatures[1] - 2.0 * a.abs()).abs(),
            1e-10,
        ));
    }
    let w = helix_witness(m, &e(3, 0))?;
    for (k, val) in &w.residuals {
        out.push(Check::below(format!("E1.helix.{k}"), *val, tol.helix));
    }
    out.push(Check::below(
        "E1.helix.recovered_a",
        (w.recovered_a - a.abs()).abs(),
        1e-9,
    ));
    out.push(Check::below(
        "E1.helix.recovered_b",
        (w.recovered_b - b.abs()).abs(),
        1e-9,
    ));
    Ok(out)
}

fn nonhomo_checks(
    entry: &CatalogEntry,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let m = entry.require_algebra()?;
    let cm = entry.require_metric()?;
    let bx = entry.sample_box.clone().expect("nonhomo has a sample box");
    let mut out = Vec::new();
    let sub = Subspace::new(DMatrix::from_columns(&[e(4, 0), e(4, 3), e(4, 2)]))?;
    let chk = tg_subspace_check(m, &sub)?;
    out.push(Check::flag("span(Z,Y,X2).rejected", !chk.totally_geodesic));
    let comp = chk
        .witness
        .as_ref()
        .map_or(f64::NAN, |w| w.normal_component[1]);
    out.push(Check::below(
        "span(Z,Y,X2).witness_X1_plus_1",
        (comp + 1.0).abs(),
        1e-12,
    ));
    let cls = classify_case(m, &e(4, 3))?;
    out.push(Check::flag(
        "Y.circle_normal",
        cls.case_tag == CaseTag::CircleNormal,
    ));
    out.push(Check::below(
        "Y.k1_minus_2",
        (cls.frenet.curvatures.first().copied().unwrap_or(f64::NAN) - 2.0).abs(),
        1e-10,
    ));
    out.extend(coordinate_checks(cm, &bx, rng, tol)?);
    let plane = LevelSetHypersurface::coordinate_hyperplane(4, 1, 0.0);
    let mut worst: f64 = 0.0;
    for mut p in sample_points(&bx, 20, rng) {
        p[1] = 0.0;
        worst = worst.max(second_fundamental_form_with(cm, &plane, &p, tol)?.max_norm);
    }
    out.push(Check::below("x1=0.sff_max_norm", worst, 1e-8));
    out.push(Check::below(
        "recoordinatization.sff_change",
        recoordinatization_change(cm, rng, tol)?,
        1e-7,
    ));
    // Warped-product construction of the same metric.
    let base = CoordinateMetric::new("half-plane", 2, |u: &DVector<f64>| {
        Ok(DMatrix::from_diagonal(&v(&[1.0, (4.0 * u[0]).exp()])))
    })
    .with_partials(|u: &DVector<f64>| {
        Ok(vec![
            DMatrix::from_diagonal(&v(&[0.0, 4.0 * (4.0 * u[0]).exp()])),
            DMatrix::zeros(2, 2),
        ])
    });
    let warped = build_warped_product(2, &base, &ScalarField::new(|u| u[0], |_| v(&[1.0, 0.0])))?;
    let mut gap: f64 = 0.0;
    for p in sample_points(&bx, 10, rng) {
        // warped coordinates (x1, x2, z, y)
        let q = v(&[p[1], p[2], p[0], p[3]]);
        let perm = DMatrix::from_fn(4, 4, |i, j| if [1, 2, 0, 3][i] == j { 1.0 } else { 0.0 });
        let gw = perm.transpose() * warped.gram(&q)? * &perm;
        gap = gap.max((gw - cm.gram(&p)?).abs().max());
    }
    out.push(Check::below("warped_product_match", gap, 1e-14));
    // Sectional curvatures at the identity against the left-invariant model.
    let id = entry.identity.clone().expect("identity");
    let mut gap: f64 = 0.0;
    for _ in 0..3 {
        let (x, y) = (random_unit(4, rng), random_unit(4, rng));
        gap = gap.max((cm.sectional(&id, &x, &y)? - m.sectional(&x, &y)?).abs());
    }
    out.push(Check::below("identity_sectional_vs_algebra", gap, 1e-6));
    let traj = geodesic_integrate_with(cm, &id, &e(4, 0), 2.0, tol.rk4_step, tol)?;
    let off_axis = traj
        .points
        .iter()
        .map(|p| p[1].abs().max(p[2].abs()).max(p[3].abs()))
        .fold(0.0, f64::max);
    out.push(Check::below("z_axis_geodesic.off_axis", off_axis, 1e-8));
    out.push(Check::below(
        "z_axis_geodesic.endpoint_z_minus_2",
        (traj.endpoint()[0] - 2.0).abs(),
        1e-8,
    ));
    Ok(out)
}

/// Change in the principal curvatures of `{z - 0.2 x1 = 0}` and `{x1 = 0}`
/// under the chart change `x1 -> x1 + 0.3 x2`.
pub fn recoordinatization_change(
    cm: &CoordinateMetric,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<f64> {
    let map = |y: &DVector<f64>| v(&[y[0], y[1] + 0.3 * y[2], y[2], y[3]]);
    let jac = DMatrix::from_row_slice(
        4,
        4,
        &[
            1., 0., 0., 0., 0., 1., 0.3, 0., 0., 0., 1., 0., 0., 0., 0., 1.,
        ],
    );
    let j2 = jac.clone();
    let pulled = cm.pullback("recoordinatized", map, move |_| j2.clone());
    let surfaces: [(LevelSetHypersurface, LevelSetHypersurface); 2] = [
        (
            LevelSetHypersurface::coordinate_hyperplane(4, 1, 0.0),
            LevelSetHypersurface::new(ScalarField::new(
                |y| y[1] + 0.3 * y[2],
                |_| v(&[0., 1., 0.3, 0.]),
            )),
        ),
        (
            LevelSetHypersurface::new(ScalarField::new(
                |x| x[0] - 0.2 * x[1],
                |_| v(&[1., -0.2, 0., 0.]),
            )),
            LevelSetHypersurface::new(ScalarField::new(
                |y| y[0] - 0.2 * (y[1] + 0.3 * y[2]),
                |_| v(&[1., -0.2, -0.06, 0.]),
            )),
        ),
    ];
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let mut y = v(&[
            rng.random_range(-0.5..0.5),
            0.0,
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
        ]);
        for (k, (orig, pulled_surface)) in surfaces.iter().enumerate() {
            // put y on the surface: solve for y[1]
            y[1] = if k == 0 {
                -0.3 * y[2]
            } else {
                (y[0] / 0.2) - 0.3 * y[2]
            };
            let x = map(&y);
            let a = second_fundamental_form_with(cm, orig, &x, tol)?;
            let b = second_fundamental_form_with(&pulled, pulled_surface, &y, tol)?;
            for (p, q) in a.principal_curvatures.iter().zip(&b.principal_curvatures) {
                worst = worst.max((p - q).abs());
            }
        }
    }
    Ok(worst)
}

fn heisenberg_checks(entry: &CatalogEntry) -> Result<Vec<Check>> {
    let m = entry.require_algebra()?;
    let chk = tg_subspace_check(
        m,
        &Subspace::new(DMatrix::from_columns(&[e(3, 0), e(3, 1)]))?,
    )?;
    Ok(vec![Check::flag(
        "span(X,Y).rejected",
        !chk.totally_geodesic,
    )])
}

fn abelian_checks(entry: &CatalogEntry, continuum: bool) -> Result<Vec<Check>> {
    let m = entry.require_algebra()?;
    let n = m.dim();
    let cls = classify_case(m, &e(n, 0))?;
    Ok(vec![
        Check::flag("search.continuum_detected", continuum),
        Check::flag(
            "e1.geodesic_normal",
            cls.case_tag == CaseTag::GeodesicNormal,
        ),
        Check::below(
            "e1.lambda",
            cls.eigenvalue_lambda.map_or(f64::NAN, f64::abs),
            1e-12,
        ),
    ])
}

fn hyperbolic_checks(
    entry: &CatalogEntry,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let cm = entry.require_metric()?;
    let bx = entry.sample_box.clone().expect("box");
    let mut out = coordinate_checks(cm, &bx, rng, tol)?;
    let mut worst: f64 = 0.0;
    for p in sample_points(&bx, 10, rng) {
        worst = worst.max((cm.sectional(&p, &e(2, 0), &e(2, 1))? + 1.0).abs());
    }
    out.push(Check::below("sectional_plus_1", worst, 1e-7));
    out.push(Check::within(
        "rk4_halving_ratio",
        rk4_halving_ratio(0.1, tol)?,
        8.0,
        32.0,
    ));
    // dz^2 + e^{4z} dy^2 as a warped product against the [Z,Y] = 2Y algebra.
    let line = CoordinateMetric::euclidean(1);
    let warped = build_warped_product(1, &line, &ScalarField::new(|u| 2.0 * u[0], |_| v(&[2.0])))?;
    let lie =
        MetricLieAlgebra::orthonormal(LieAlgebra::from_brackets(2, &[(0, 1, vec![0.0, 2.0])])?);
    let kc = warped.sectional(&v(&[0.3, -0.4]), &e(2, 0), &e(2, 1))?;
    let kl = lie.sectional(&e(2, 0), &e(2, 1))?;
    out.push(Check::below(
        "warped_line_vs_algebra",
        (kc - kl).abs(),
        1e-7,
    ));
    out.push(Check::below("warped_line_plus_4", (kc + 4.0).abs(), 1e-7));
    Ok(out)
}

/// Leaf-curve Frenet data of a twisted product: `(k1, k2, k3)` at `u0`.
pub fn twisted_leaf_frenet(
    cm: &CoordinateMetric,
    u0: &DVector<f64>,
    tol: &Tolerances,
) -> Result<crate::tg::FrenetData> {
    let nb = u0.len();
    let curve = SampledCurve::from_fn(-0.5, 0.5, 201, |t| {
        let mut x = DVector::zeros(nb + 1);
        x[0] = t;
        x.rows_mut(1, nb).copy_from(u0);
        x
    });
    frenet_numeric_with(cm, &curve, true, tol)
}

/// Max over the points of the SFF norm of the leaf `{t = 0}`.
pub fn leaf_sff(
    cm: &CoordinateMetric,
    base_points: &[DVector<f64>],
    tol: &Tolerances,
) -> Result<f64> {
    let n = cm.dim();
    let leaf = LevelSetHypersurface::coordinate_hyperplane(n, 0, 0.0);
    let mut worst: f64 = 0.0;
    for u in base_points {
        let mut x = DVector::zeros(n);
        x.rows_mut(1, n - 1).copy_from(u);
        worst = worst.max(second_fundamental_form_with(cm, &leaf, &x, tol)?.max_norm);
    }
    Ok(worst)
}

/// Intrinsic (base) against ambient sectional curvature of the leaf `{t = 0}`.
pub fn gauss_equation_gap(
    spec: &TwistedProductSpec,
    cm: &CoordinateMetric,
    base_points: &[DVector<f64>],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for u in base_points {
        let x = DVector::from_iterator(3, std::iter::once(0.0).chain(u.iter().copied()));
        let ambient = cm.sectional(&x, &e(3, 1), &e(3, 2))?;
        let intrinsic = spec.base.sectional(u, &e(2, 0), &e(2, 1))?;
        worst = worst.max((ambient - intrinsic).abs());
    }
    Ok(worst)
}

/// Sectional curvature gap at the anchor between the twisted metric and
/// sl2(kappa/2, 1/2), with `(dt, dx, dy) -> (E1, -2 E3, -2 E2)`.
pub fn twisted_anchor_gap(
    cm: &CoordinateMetric,
    kappa: f64,
    planes: &[(DVector<f64>, DVector<f64>)],
) -> Result<f64> {
    let m =
        MetricLieAlgebra::orthonormal(LieAlgebra::new(catalog::sl2_constants(kappa / 2.0, 0.5)?)?);
    let map = |c: &DVector<f64>| v(&[c[0], -2.0 * c[2], -2.0 * c[1]]);
    let mut worst: f64 = 0.0;
    for (a, b) in planes {
        let kc = cm.sectional(&DVector::zeros(3), a, b)?;
        worst = worst.max((kc - m.sectional(&map(a), &map(b))?).abs());
    }
    Ok(worst)
}

fn twisted_checks(
    entry: &CatalogEntry,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let spec = entry.twisted.as_ref().expect("twisted spec");
    let cm = entry.require_metric()?;
    let kappa = spec.kappa;
    let g = tol.grid;
    let mut out = Vec::new();
    let disk = spiral_points(&DVector::zeros(2), 0.6, g, tol.anchor_exclusion);
    let polar_spec = catalog::twisted_h2_polar(kappa)?;
    let polar_base: Vec<DVector<f64>> = (0..g)
        .map(|i| {
            let s = (i as f64 + 0.5) / g as f64;
            v(&[tol.anchor_exclusion + 1.5 * s, 6.0 * s - 3.0])
        })
        .collect();
    let ode = twisting_ode_residual(spec, &product_grid(-1.0, 1.0, g, &disk)).max(
        twisting_ode_residual(&polar_spec, &product_grid(-1.0, 1.0, g, &polar_base)),
    );
    out.push(Check::below("twisting_ode_residual", ode, 1e-10));
    for (label, s, pts) in [("disk", spec, &disk), ("polar", &polar_spec, &polar_base)] {
        let eik = eikonal_residuals(s, pts)?;
        out.push(Check::below(
            format!("eikonal.{label}.alpha"),
            eik.alpha,
            1e-12,
        ));
        out.push(Check::below(
            format!("eikonal.{label}.beta"),
            eik.beta.unwrap_or(f64::NAN),
            1e-12,
        ));
    }
    let polar_metric = build_twisted_product(&polar_spec);
    for (label, metric, u0) in [
        ("anchor", cm, v(&[0.0, 0.0])),
        ("disk", cm, v(&[0.3, -0.2])),
        ("polar", &polar_metric, v(&[0.7, 0.3])),
    ] {
        let f = twisted_leaf_frenet(metric, &u0, tol)?;
        out.push(Check::flag(format!("leaf.{label}.order_2"), f.order == 2));
        let k = |i: usize| f.curvatures.get(i).copied().unwrap_or(f64::NAN);
        out.push(Check::below(
            format!("leaf.{label}.k1_minus_k"),
            (k(0) - spec.k).abs(),
            1e-3,
        ));
        out.push(Check::below(
            format!("leaf.{label}.k2_minus_kappa"),
            (k(1) - kappa.abs()).abs(),
            1e-3,
        ));
        out.push(Check::below(
            format!("leaf.{label}.k3"),
            f.truncation_residual,
            tol.numeric_frenet_zero,
        ));
    }
    let inner = spiral_points(&DVector::zeros(2), 0.5, 10, tol.anchor_exclusion);
    out.push(Check::below(
        "leaf_t0.sff_max_norm",
        leaf_sff(cm, &inner, tol)?,
        1e-7,
    ));
    out.push(Check::below(
        "leaf_t0.gauss_equation",
        gauss_equation_gap(spec, cm, &inner)?,
        1e-5,
    ));
    let bx = entry.sample_box.clone().expect("box");
    out.extend(coordinate_checks(cm, &bx, rng, tol)?);
    let planes: Vec<(DVector<f64>, DVector<f64>)> = (0..3)
        .map(|_| (random_unit(3, rng), random_unit(3, rng)))
        .collect();
    out.push(Check::below(
        "anchor_sectional_vs_sl2",
        twisted_anchor_gap(cm, kappa, &planes)?,
        1e-6,
    ));
    Ok(out)
}

fn euclidean_checks(
    entry: &CatalogEntry,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let cm = entry.require_metric()?;
    let n = cm.dim();
    let bx = entry.sample_box.clone().expect("box");
    let mut out = coordinate_checks(cm, &bx, rng, tol)?;
    let x0 = sample_points(&bx, 1, rng).remove(0);
    let v0 = random_unit(n, rng);
    let tr = geodesic_integrate_with(cm, &x0, &v0, 1.0, 0.01, tol)?;
    out.push(Check::below(
        "straight_line_endpoint",
        (tr.endpoint() - (&x0 + &v0)).norm(),
        1e-12,
    ));
    if n >= 2 {
        let r = 1.5;
        let sphere = LevelSetHypersurface::sphere(DVector::zeros(n), r);
        let p = random_unit(n, rng) * r;
        let sff = second_fundamental_form_with(cm, &sphere, &p, tol)?;
        out.push(Check::below(
            "sphere.max_norm_minus_1_over_r",
            (sff.max_norm - 1.0 / r).abs(),
            1e-8,
        ));
    }
    Ok(out)
}

fn run_entry(entry: &CatalogEntry, tol: &Tolerances) -> Result<Vec<Check>> {
    let mut rng = rng(&entry.name);
    let mut out = Vec::new();
    let mut continuum = false;
    if let Some(m) = &entry.algebra {
        out.extend(algebra_identity_checks("", m, tol));
        let (checks, normals, cont) = search_checks(m, tol)?;
        continuum = cont;
        out.extend(checks);
        let normals = if cont { Vec::new() } else { normals };
        out.extend(frame_change_checks(m, &normals, 10, &mut rng, tol)?);
    }
    match entry.name.as_str() {
        "sl2" => out.extend(sl2_checks(entry, tol)?),
        "nonhomo" => out.extend(nonhomo_checks(entry, &mut rng, tol)?),
        "heisenberg" => out.extend(heisenberg_checks(entry)?),
        "abelian" => {
            out.extend(abelian_checks(entry, continuum)?);
            out.extend(coordinate_checks(
                entry.require_metric()?,
                entry.sample_box.as_ref().expect("box"),
                &mut rng,
                tol,
            )?);
        }
        "hyperbolic2" => out.extend(hyperbolic_checks(entry, &mut rng, tol)?),
        "twisted-h2" => out.extend(twisted_checks(entry, &mut rng, tol)?),
        "euclidean" => out.extend(euclidean_checks(entry, &mut rng, tol)?),
        _ => {}
    }
    Ok(out)
}

/// Runs the battery for one `NAME[:params]`.
pub fn verify_entry(spec: &str, tol: &Tolerances) -> Result<EntryLedger> {
    let entry = catalog::lookup_spec(spec)?;
    Ok(match run_entry(&entry, tol) {
        Ok(checks) => EntryLedger {
            entry: spec.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            error: None,
        },
        Err(e) => EntryLedger {
            entry: spec.to_string(),
            checks: Vec::new(),
            error: Some(e.to_string()),
            pass: false,
        },
    })
}

/// Every catalog entry with default parameters.
pub fn verify_all(tol: &Tolerances) -> Result<VerifyLedger> {
    let entries = catalog::NAMES
        .iter()
        .map(|n| verify_entry(n, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyLedger {
        pass: entries.iter().all(|e| e.pass),
        entries,
    })
}
