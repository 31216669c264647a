//! Built-in examples, addressed as `NAME` or `NAME:key=value,...`.
//!
//! | name          | params         | provides                                   |
//! |---------------|----------------|--------------------------------------------|
//! | `sl2`         | `a`, `b` (1,1) | metric Lie algebra                         |
//! | `nonhomo`     |                | metric Lie algebra and coordinate metric   |
//! | `heisenberg`  |                | metric Lie algebra                         |
//! | `abelian`     | `n` (3)        | metric Lie algebra and coordinate metric   |
//! | `hyperbolic2` |                | coordinate metric (geodesic polar chart)   |
//! | `twisted-h2`  | `kappa` (1)    | twisted product over the Poincaré disk     |
//! | `euclidean`   | `n` (3)        | coordinate metric                          |

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Vector3};

use crate::coord::{build_twisted_product, CoordinateMetric, ScalarField, TwistedProductSpec};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, MetricLieAlgebra};
use crate::linalg::Tensor3;

pub const NAMES: [&str; 7] = [
    "sl2",
    "nonhomo",
    "heisenberg",
    "abelian",
    "hyperbolic2",
    "twisted-h2",
    "euclidean",
];

/// Axis-aligned box used to draw sample points for a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBox {
    pub lo: DVector<f64>,
    pub hi: DVector<f64>,
}

impl SampleBox {
    pub fn cube(n: usize, lo: f64, hi: f64) -> Self {
        Self {
            lo: DVector::from_element(n, lo),
            hi: DVector::from_element(n, hi),
        }
    }

    /// Maps `s` in `[0,1]^n` into the box.
    pub fn point(&self, s: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.lo.len(), |i, _| {
            self.lo[i] + s[i] * (self.hi[i] - self.lo[i])
        })
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub algebra: Option<MetricLieAlgebra>,
    pub metric: Option<CoordinateMetric>,
    pub twisted: Option<TwistedProductSpec>,
    /// Chart point corresponding to the identity, when there is one.
    pub identity: Option<DVector<f64>>,
    /// Where the chart is valid and away from coordinate singularities.
    pub sample_box: Option<SampleBox>,
}

impl CatalogEntry {
    fn new(name: &str, params: BTreeMap<String, f64>) -> Self {
        Self {
            name: name.into(),
            params,
            algebra: None,
            metric: None,
            twisted: None,
            identity: None,
            sample_box: None,
        }
    }

    pub fn require_algebra(&self) -> Result<&MetricLieAlgebra> {
        self.algebra
            .as_ref()
            .ok_or_else(|| Error::BadParams(format!("`{}` has no metric Lie algebra", self.name)))
    }

    pub fn require_metric(&self) -> Result<&CoordinateMetric> {
        self.metric
            .as_ref()
            .ok_or_else(|| Error::BadParams(format!("`{}` has no coordinate metric", self.name)))
    }
}

/// Parses `NAME[:key=value,...]`.
pub fn parse_builtin(spec: &str) -> Result<(String, BTreeMap<String, f64>)> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), r),
        None => (spec.trim(), ""),
    };
    let mut params = BTreeMap::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::BadParams(format!("expected key=value, got `{item}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("`{}` is not a number", v.trim())))?;
        params.insert(k.trim().to_string(), v);
    }
    Ok((name.to_string(), params))
}

pub fn lookup_spec(spec: &str) -> Result<CatalogEntry> {
    let (name, params) = parse_builtin(spec)?;
    catalog_lookup(&name, &params)
}

fn take(params: &BTreeMap<String, f64>, allowed: &[(&str, f64)]) -> Result<Vec<f64>> {
    if let Some(k) = params.keys().find(|k| !allowed.iter().any(|(a, _)| a == k)) {
        return Err(Error::BadParams(format!("unknown parameter `{k}`")));
    }
    Ok(allowed
        .iter()
        .map(|(k, d)| params.get(*k).copied().unwrap_or(*d))
        .collect())
}

fn dimension(v: f64) -> Result<usize> {
    if v.fract() != 0.0 || !(LieAlgebra::MIN_DIM as f64..=LieAlgebra::MAX_DIM as f64).contains(&v) {
        return Err(Error::BadParams(format!(
            "n must be an integer in 2..=8, got {v}"
        )));
    }
    Ok(v as usize)
}

pub fn catalog_lookup(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogEntry> {
    let mut e = CatalogEntry::new(name, params.clone());
    match name {
        "sl2" => {
            let p = take(params, &[("a", 1.0), ("b", 1.0)])?;
            e.algebra = Some(MetricLieAlgebra::orthonormal(LieAlgebra::new(
                sl2_constants(p[0], p[1])?,
            )?));
        }
        "nonhomo" => {
            take(params, &[])?;
            e.algebra = Some(MetricLieAlgebra::orthonormal(nonhomo_algebra()));
            e.metric = Some(nonhomo_metric());
            e.identity = Some(DVector::zeros(4));
            e.sample_box = Some(SampleBox::cube(4, -1.0, 1.0));
        }
        "heisenberg" => {
            take(params, &[])?;
            e.algebra = Some(MetricLieAlgebra::orthonormal(LieAlgebra::from_brackets(
                3,
                &[(0, 1, vec![0.0, 0.0, 1.0])],
            )?));
        }
        "abelian" => {
            let n = dimension(take(params, &[("n", 3.0)])?[0])?;
            e.algebra = Some(MetricLieAlgebra::orthonormal(LieAlgebra::abelian(n)?));
            e.metric = Some(CoordinateMetric::euclidean(n));
            e.identity = Some(DVector::zeros(n));
            e.sample_box = Some(SampleBox::cube(n, -1.0, 1.0));
        }
        "euclidean" => {
            let n = dimension(take(params, &[("n", 3.0)])?[0])?;
            e.metric = Some(CoordinateMetric::euclidean(n));
            e.sample_box = Some(SampleBox::cube(n, -1.0, 1.0));
        }
        "hyperbolic2" => {
            take(params, &[])?;
            e.metric = Some(hyperbolic_polar());
            e.sample_box = Some(SampleBox {
                lo: DVector::from_vec(vec![0.2, -1.0]),
                hi: DVector::from_vec(vec![1.2, 1.0]),
            });
        }
        "twisted-h2" => {
            let kappa = take(params, &[("kappa", 1.0)])?[0];
            if kappa == 0.0 || !kappa.is_finite() {
                return Err(Error::BadParams(format!(
                    "kappa must be nonzero, got {kappa}"
                )));
            }
            let spec = twisted_h2_disk(kappa)?;
            e.metric = Some(build_twisted_product(&spec));
            e.twisted = Some(spec);
            e.identity = Some(DVector::zeros(3));
            e.sample_box = Some(SampleBox {
                lo: DVector::from_vec(vec![-1.0, -0.6, -0.6]),
                hi: DVector::from_vec(vec![1.0, 0.6, 0.6]),
            });
        }
        other => return Err(Error::UnknownName(other.to_string())),
    }
    Ok(e)
}

fn traceless_coords(m: &Matrix2<f64>) -> Vector3<f64> {
    Vector3::new(m[(0, 0)], m[(0, 1)], m[(1, 0)])
}

/// sl(2) with the orthonormal basis `E1 = a N`, `E2 = 2b P`, `E3 = b H`,
/// structure constants from 2x2 commutators.
pub fn sl2_matrices(a: f64, b: f64) -> [Matrix2<f64>; 3] {
    [
        a * Matrix2::new(0.0, 1.0, -1.0, 0.0),
        2.0 * b * Matrix2::new(0.0, 1.0, 0.0, 0.0),
        b * Matrix2::new(1.0, 0.0, 0.0, -1.0),
    ]
}

pub fn sl2_constants(a: f64, b: f64) -> Result<Tensor3> {
    if a * b == 0.0 || !(a * b).is_finite() {
        return Err(Error::BadParams(format!(
            "sl2 needs a*b != 0 (a = {a}, b = {b})"
        )));
    }
    let e = sl2_matrices(a, b);
    let basis = Matrix3::from_columns(&[
        traceless_coords(&e[0]),
        traceless_coords(&e[1]),
        traceless_coords(&e[2]),
    ]);
    let lu = basis.lu();
    let mut c = Tensor3::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            let comm = e[i] * e[j] - e[j] * e[i];
            let coeffs = lu
                .solve(&traceless_coords(&comm))
                .ok_or_else(|| Error::BadParams("degenerate sl2 basis".into()))?;
            for k in 0..3 {
                c.set(i, j, k, coeffs[k]);
            }
        }
    }
    let closed = crate::lie::constants_from_brackets(
        3,
        &[
            (0, 1, vec![0.0, 0.0, 2.0 * a]),
            (0, 2, vec![2.0 * b, -2.0 * a, 0.0]),
            (1, 2, vec![0.0, -2.0 * b, 0.0]),
        ],
    )?;
    let scale = a.abs().max(b.abs()).max(1.0);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let d = (c.get(i, j, k) - closed.get(i, j, k)).abs();
                if d > 1e-12 * scale {
                    return Err(Error::BadParams(format!(
                        "sl2 constants disagree at ({i},{j},{k}) by {d:e}"
                    )));
                }
            }
        }
    }
    Ok(closed)
}

/// Basis `(Z, X1, X2, Y)`: `[Z,X1] = X1 + X2`, `[Z,X2] = -X1 + X2`, `[Z,Y] = 2Y`.
pub fn nonhomo_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        &[
            (0, 1, vec![0.0, 1.0, 1.0, 0.0]),
            (0, 2, vec![0.0, -1.0, 1.0, 0.0]),
            (0, 3, vec![0.0, 0.0, 0.0, 2.0]),
        ],
    )
    .expect("valid Lie algebra")
}

/// `dz^2 + e^{2z}(dx1^2 + dx2^2) + e^{4z} dy^2` in coordinates `(z, x1, x2, y)`.
pub fn nonhomo_metric() -> CoordinateMetric {
    CoordinateMetric::new("nonhomo", 4, |x: &DVector<f64>| {
        let (e2, e4) = ((2.0 * x[0]).exp(), (4.0 * x[0]).exp());
        Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![
            1.0, e2, e2, e4,
        ])))
    })
    .with_partials(|x: &DVector<f64>| {
        let (e2, e4) = ((2.0 * x[0]).exp(), (4.0 * x[0]).exp());
        let mut out = vec![DMatrix::zeros(4, 4); 4];
        out[0] =
            DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 2.0 * e2, 2.0 * e2, 4.0 * e4]));
        Ok(out)
    })
}

/// `dr^2 + sinh^2 r dtheta^2`.
pub fn hyperbolic_polar() -> CoordinateMetric {
    CoordinateMetric::new("hyperbolic2", 2, |x: &DVector<f64>| {
        Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![
            1.0,
            x[0].sinh().powi(2),
        ])))
    })
    .with_partials(|x: &DVector<f64>| {
        let r = x[0];
        Ok(vec![
            DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 2.0 * r.sinh() * r.cosh()])),
            DMatrix::zeros(2, 2),
        ])
    })
}

/// Poincaré disk `4 (dx^2 + dy^2) / (1 - |x|^2)^2`.
pub fn poincare_disk() -> CoordinateMetric {
    CoordinateMetric::new("poincare-disk", 2, |x: &DVector<f64>| {
        let w = 1.0 - x.norm_squared();
        if w <= 0.0 {
            return Err(Error::MetricDegenerate {
                reason: format!("point outside the unit disk (|x|^2 = {})", x.norm_squared()),
            });
        }
        Ok(DMatrix::identity(2, 2) * (4.0 / (w * w)))
    })
    .with_partials(|x: &DVector<f64>| {
        let w = 1.0 - x.norm_squared();
        Ok((0..2)
            .map(|i| DMatrix::identity(2, 2) * (16.0 * x[i] / w.powi(3)))
            .collect())
    })
}

/// Twisted product over the hyperbolic plane in geodesic polar coordinates:
/// `alpha = r`, `beta = theta`, `k = 1`.
pub fn twisted_h2_polar(kappa: f64) -> Result<TwistedProductSpec> {
    let alpha = ScalarField::new(|u| u[0], |_| DVector::from_vec(vec![1.0, 0.0]));
    let beta = ScalarField::new(|u| u[1], |_| DVector::from_vec(vec![0.0, 1.0]));
    TwistedProductSpec::new(
        hyperbolic_polar(),
        alpha,
        beta,
        kappa,
        1.0,
        DVector::zeros(2),
    )
}

/// The same twisted product over the Poincaré disk, where the centre (the
/// anchor) is a regular chart point: `alpha = 2 artanh |x|`, `beta = atan2(y, x)`.
pub fn twisted_h2_disk(kappa: f64) -> Result<TwistedProductSpec> {
    let alpha = ScalarField::new(
        |u| 2.0 * u.norm().atanh(),
        |u| {
            let rho = u.norm();
            u * (2.0 / ((1.0 - rho * rho) * rho))
        },
    );
    let beta = ScalarField::new(
        |u| u[1].atan2(u[0]),
        |u| {
            let r2 = u.norm_squared();
            DVector::from_vec(vec![-u[1] / r2, u[0] / r2])
        },
    );
    TwistedProductSpec::new(poincare_disk(), alpha, beta, kappa, 1.0, DVector::zeros(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_commutator_oracle() {
        let c = sl2_constants(1.0, 1.0).unwrap();
        assert_eq!(
            (c.get(0, 1, 0), c.get(0, 1, 1), c.get(0, 1, 2)),
            (0.0, 0.0, 2.0)
        );
        assert_eq!(
            (c.get(0, 2, 0), c.get(0, 2, 1), c.get(0, 2, 2)),
            (2.0, -2.0, 0.0)
        );
        assert_eq!(
            (c.get(1, 2, 0), c.get(1, 2, 1), c.get(1, 2, 2)),
            (0.0, -2.0, 0.0)
        );
        assert!(matches!(sl2_constants(0.0, 1.0), Err(Error::BadParams(_))));
    }

    #[test]
    fn parse_and_lookup() {
        let (n, p) = parse_builtin("sl2:a=2, b=0.5").unwrap();
        assert_eq!(n, "sl2");
        assert_eq!(p["a"], 2.0);
        assert!(lookup_spec("sl2:a=1,b=1").unwrap().algebra.is_some());
        assert!(matches!(lookup_spec("sl3"), Err(Error::UnknownName(_))));
        assert!(matches!(lookup_spec("sl2:c=1"), Err(Error::BadParams(_))));
        assert!(matches!(
            lookup_spec("twisted-h2:kappa=0"),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            lookup_spec("abelian:n=2.5"),
            Err(Error::BadParams(_))
        ));
        let ab = lookup_spec("abelian:n=4").unwrap();
        assert_eq!(ab.require_algebra().unwrap().onb_constants().max_abs(), 0.0);
    }

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            lookup_spec(name).unwrap();
        }
    }

    #[test]
    fn disk_chart_matches_polar_twist() {
        let disk = twisted_h2_disk(1.5).unwrap();
        let polar = twisted_h2_polar(1.5).unwrap();
        let (r, th): (f64, f64) = (0.7, 2.1);
        let rho = (r / 2.0).tanh();
        let u = DVector::from_vec(vec![rho * th.cos(), rho * th.sin()]);
        let v = DVector::from_vec(vec![r, th]);
        assert!((disk.e_minus_phi(0.3, &u) - polar.e_minus_phi(0.3, &v)).abs() < 1e-12);
    }
}
