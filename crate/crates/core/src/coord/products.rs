use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::metric::{CoordinateMetric, ScalarField};

/// `e^{2 logf(u)} sum_a (dv^a)^2 + base`, coordinates `(v^1..v^m, u)`.
pub fn build_warped_product(
    m: usize,
    base: &CoordinateMetric,
    logf: &ScalarField,
) -> Result<CoordinateMetric> {
    if m == 0 {
        return Err(Error::BadParams("warped product needs m >= 1".into()));
    }
    let nb = base.dim();
    let n = m + nb;
    let (b1, l1) = (base.clone(), logf.clone());
    let gram = move |x: &DVector<f64>| -> Result<DMatrix<f64>> {
        let u = x.rows(m, nb).into_owned();
        let mut g = DMatrix::zeros(n, n);
        let f = (2.0 * l1.value(&u)).exp();
        for a in 0..m {
            g[(a, a)] = f;
        }
        g.view_mut((m, m), (nb, nb)).copy_from(&b1.gram(&u)?);
        Ok(g)
    };
    let (b2, l2) = (base.clone(), logf.clone());
    let partials = move |x: &DVector<f64>| -> Result<Vec<DMatrix<f64>>> {
        let u = x.rows(m, nb).into_owned();
        let f = (2.0 * l2.value(&u)).exp();
        let dl = l2.gradient(&u);
        let db = b2.partials(&u)?;
        let mut out = vec![DMatrix::zeros(n, n); m];
        for i in 0..nb {
            let mut d = DMatrix::zeros(n, n);
            for a in 0..m {
                d[(a, a)] = 2.0 * dl[i] * f;
            }
            d.view_mut((m, m), (nb, nb)).copy_from(&db[i]);
            out.push(d);
        }
        Ok(out)
    };
    Ok(
        CoordinateMetric::new(format!("warped({})", base.name()), n, gram)
            .with_partials(partials)
            .with_fd_steps(base.fd_step(), crate::Tolerances::default().fd_step2),
    )
}

/// `e^{-phi}` and its first two `t`-derivatives, with `phi` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistJet {
    pub phi: f64,
    pub phi_t: f64,
    pub phi_tt: f64,
}

/// Data of a twisted product `e^{2 phi(t,u)} dt^2 + B(u)` with
/// `e^{-phi} = sinh(alpha) cos(kappa t + beta) + cosh(alpha)`.
#[derive(Debug, Clone)]
pub struct TwistedProductSpec {
    pub base: CoordinateMetric,
    pub alpha: ScalarField,
    pub beta: ScalarField,
    pub kappa: f64,
    pub k: f64,
    /// Base point with `alpha = 0`, where `phi(t) = 0` for all `t`.
    pub anchor: DVector<f64>,
}

impl TwistedProductSpec {
    pub fn new(
        base: CoordinateMetric,
        alpha: ScalarField,
        beta: ScalarField,
        kappa: f64,
        k: f64,
        anchor: DVector<f64>,
    ) -> Result<Self> {
        if kappa == 0.0 || !kappa.is_finite() {
            return Err(Error::InvalidTwistedSpec(format!(
                "kappa must be nonzero, got {kappa}"
            )));
        }
        if k <= 0.0 || !k.is_finite() {
            return Err(Error::InvalidTwistedSpec(format!(
                "k must be positive, got {k}"
            )));
        }
        if anchor.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                got: anchor.len(),
            });
        }
        let a0 = alpha.value(&anchor);
        if a0.abs() > 1e-12 {
            return Err(Error::InvalidTwistedSpec(format!(
                "alpha(anchor) = {a0}, expected 0"
            )));
        }
        Ok(Self {
            base,
            alpha,
            beta,
            kappa,
            k,
            anchor,
        })
    }

    fn angle(&self, t: f64, u: &DVector<f64>) -> f64 {
        self.kappa * t + self.beta.value(u)
    }

    /// `e^{-phi(t, u)}`.
    pub fn e_minus_phi(&self, t: f64, u: &DVector<f64>) -> f64 {
        let a = self.alpha.value(u);
        a.sinh() * self.angle(t, u).cos() + a.cosh()
    }

    pub fn jet(&self, t: f64, u: &DVector<f64>) -> TwistJet {
        let a = self.alpha.value(u);
        let th = self.angle(t, u);
        let (s, c) = (a.sinh(), a.cosh());
        let e = s * th.cos() + c;
        let e_t = -self.kappa * s * th.sin();
        let e_tt = -self.kappa * self.kappa * s * th.cos();
        TwistJet {
            phi: -e.ln(),
            phi_t: -e_t / e,
            phi_tt: -e_tt / e + (e_t / e).powi(2),
        }
    }

    /// The value `2 kappa^2 cosh(alpha)` of the conserved quantity.
    pub fn conserved_value(&self, u: &DVector<f64>) -> f64 {
        2.0 * self.kappa * self.kappa * self.alpha.value(u).cosh()
    }
}

/// Coordinates `(t, u)`; `g_tt = e^{2 phi}`, block diagonal with the base.
pub fn build_twisted_product(spec: &TwistedProductSpec) -> CoordinateMetric {
    let nb = spec.base.dim();
    let n = nb + 1;
    let s1 = Arc::new(spec.clone());
    let gram = move |x: &DVector<f64>| -> Result<DMatrix<f64>> {
        let u = x.rows(1, nb).into_owned();
        let e = s1.e_minus_phi(x[0], &u);
        if e <= 0.0 || !e.is_finite() {
            return Err(Error::NonPositiveTwist { value: e });
        }
        let mut g = DMatrix::zeros(n, n);
        g[(0, 0)] = 1.0 / (e * e);
        g.view_mut((1, 1), (nb, nb)).copy_from(&s1.base.gram(&u)?);
        Ok(g)
    };
    let s2 = Arc::new(spec.clone());
    let partials = move |x: &DVector<f64>| -> Result<Vec<DMatrix<f64>>> {
        let s = &s2;
        let u = x.rows(1, nb).into_owned();
        let a = s.alpha.value(&u);
        let th = s.angle(x[0], &u);
        let (sh, ch) = (a.sinh(), a.cosh());
        let e = sh * th.cos() + ch;
        if e <= 0.0 || !e.is_finite() {
            return Err(Error::NonPositiveTwist { value: e });
        }
        let da = s.alpha.gradient(&u);
        let dbeta = s.beta.gradient(&u);
        let db = s.base.partials(&u)?;
        let mut out = Vec::with_capacity(n);
        let mut dt = DMatrix::zeros(n, n);
        let e_t = -s.kappa * sh * th.sin();
        dt[(0, 0)] = -2.0 * e_t / e.powi(3);
        out.push(dt);
        for i in 0..nb {
            let e_i = (ch * th.cos() + sh) * da[i] - sh * th.sin() * dbeta[i];
            let mut d = DMatrix::zeros(n, n);
            d[(0, 0)] = -2.0 * e_i / e.powi(3);
            d.view_mut((1, 1), (nb, nb)).copy_from(&db[i]);
            out.push(d);
        }
        Ok(out)
    };
    CoordinateMetric::new(format!("twisted({})", spec.base.name()), n, gram)
        .with_partials(partials)
        .with_fd_steps(spec.base.fd_step(), crate::Tolerances::default().fd_step2)
}

/// `max |d/dt (e^{-phi} phi_t^2 + kappa^2 (e^phi + e^{-phi}))|` over the grid,
/// using the supplied exact jet of `phi`.
pub fn twisting_ode_residual_with<F>(kappa: f64, grid: &[(f64, DVector<f64>)], jet: F) -> f64
where
    F: Fn(f64, &DVector<f64>) -> TwistJet + Sync,
{
    grid.par_iter()
        .map(|(t, u)| {
            let j = jet(*t, u);
            let (em, ep) = ((-j.phi).exp(), j.phi.exp());
            let dq = em * (-j.phi_t.powi(3) + 2.0 * j.phi_t * j.phi_tt)
                + kappa * kappa * j.phi_t * (ep - em);
            dq.abs()
        })
        .reduce(|| 0.0, f64::max)
}

pub fn twisting_ode_residual(spec: &TwistedProductSpec, grid: &[(f64, DVector<f64>)]) -> f64 {
    twisting_ode_residual_with(spec.kappa, grid, |t, u| spec.jet(t, u))
}

/// Residuals of the two eikonal constraints on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EikonalResiduals {
    /// `max | |grad alpha|^2 - k^2 |`.
    pub alpha: f64,
    /// `max | sinh(alpha)^2 |grad beta|^2 - k^2 |`; `None` when no grid point
    /// has `alpha > 0`.
    pub beta: Option<f64>,
}

pub fn eikonal_residuals(
    spec: &TwistedProductSpec,
    grid: &[DVector<f64>],
) -> Result<EikonalResiduals> {
    let k2 = spec.k * spec.k;
    let rows: Vec<Result<(f64, Option<f64>)>> = grid
        .par_iter()
        .map(|u| {
            let ginv = spec.base.inverse(u)?;
            let da = spec.alpha.gradient(u);
            let first = ((da.transpose() * &ginv * &da)[0] - k2).abs();
            let a = spec.alpha.value(u);
            let second = if a > 1e-8 {
                let db = spec.beta.gradient(u);
                Some((a.sinh().powi(2) * (db.transpose() * &ginv * &db)[0] - k2).abs())
            } else {
                None
            };
            Ok((first, second))
        })
        .collect();
    let mut out = EikonalResiduals {
        alpha: 0.0,
        beta: None,
    };
    for r in rows {
        let (f, s) = r?;
        out.alpha = out.alpha.max(f);
        if let Some(s) = s {
            out.beta = Some(out.beta.unwrap_or(0.0).max(s));
        }
    }
    Ok(out)
}

/// `count` points of a Vogel spiral filling the disc of `radius` about
/// `center` (first two coordinates), skipping those within `exclusion`.
pub fn spiral_points(
    center: &DVector<f64>,
    radius: f64,
    count: usize,
    exclusion: f64,
) -> Vec<DVector<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let r = radius * ((i as f64 + 0.5) / count as f64).sqrt();
            let th = i as f64 * golden;
            let mut p = center.clone();
            p[0] += r * th.cos();
            p[1] += r * th.sin();
            p
        })
        .filter(|p| (p - center).norm() >= exclusion)
        .collect()
}

/// Product grid of `n` evenly spaced `t` values on `[t0, t1]` and the base points.
pub fn product_grid(t0: f64, t1: f64, n: usize, base: &[DVector<f64>]) -> Vec<(f64, DVector<f64>)> {
    let mut out = Vec::with_capacity(n * base.len());
    for i in 0..n {
        let t = if n == 1 {
            t0
        } else {
            t0 + (t1 - t0) * i as f64 / (n - 1) as f64
        };
        for u in base {
            out.push((t, u.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> CoordinateMetric {
        CoordinateMetric::euclidean(1)
    }

    #[test]
    fn warped_with_zero_log_is_product() {
        let w = build_warped_product(2, &line(), &ScalarField::constant(1, 0.0)).unwrap();
        let x = DVector::from_vec(vec![0.3, -1.0, 0.7]);
        assert_eq!(w.christoffel(&x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn warped_line_is_hyperbolic_of_curvature_minus_four() {
        let logf = ScalarField::new(|u| 2.0 * u[0], |_| DVector::from_vec(vec![2.0]));
        let w = build_warped_product(1, &line(), &logf).unwrap();
        let x = DVector::from_vec(vec![0.2, 0.1]);
        let e0 = DVector::from_vec(vec![1.0, 0.0]);
        let e1 = DVector::from_vec(vec![0.0, 1.0]);
        assert!((w.sectional(&x, &e0, &e1).unwrap() + 4.0).abs() < 1e-6);
    }

    #[test]
    fn spec_validation() {
        let base = CoordinateMetric::euclidean(2);
        let zero = ScalarField::constant(2, 0.0);
        let origin = DVector::zeros(2);
        let mk = |kappa: f64, k: f64| {
            TwistedProductSpec::new(
                base.clone(),
                zero.clone(),
                zero.clone(),
                kappa,
                k,
                origin.clone(),
            )
        };
        assert!(mk(1.0, 1.0).is_ok());
        assert!(matches!(mk(0.0, 1.0), Err(Error::InvalidTwistedSpec(_))));
        assert!(matches!(mk(1.0, -1.0), Err(Error::InvalidTwistedSpec(_))));
    }

    #[test]
    fn trivial_twist_is_product() {
        let base = CoordinateMetric::euclidean(2);
        let zero = ScalarField::constant(2, 0.0);
        let spec =
            TwistedProductSpec::new(base, zero.clone(), zero, 1.5, 1.0, DVector::zeros(2)).unwrap();
        let g = build_twisted_product(&spec);
        let x = DVector::from_vec(vec![0.4, 0.1, -0.3]);
        assert_eq!(g.gram(&x).unwrap(), DMatrix::identity(3, 3));
        let grid = product_grid(-1.0, 1.0, 5, &[DVector::from_vec(vec![0.2, 0.3])]);
        assert_eq!(twisting_ode_residual(&spec, &grid), 0.0);
        assert_eq!(spec.conserved_value(&DVector::zeros(2)), 2.0 * 1.5 * 1.5);
    }

    #[test]
    fn spiral_excludes_centre() {
        let c = DVector::from_vec(vec![0.0, 0.0]);
        let pts = spiral_points(&c, 1e-3, 10, 5e-4);
        assert!(pts.iter().all(|p| p.norm() >= 5e-4));
        assert!(pts.len() < 10);
    }
}
