use std::fmt;
use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{Tensor3, Tensor4};
use crate::tolerances::Tolerances;

pub type MatrixFn = Arc<dyn Fn(&DVector<f64>) -> Result<DMatrix<f64>> + Send + Sync>;
/// `partials(x)[k]` is the matrix `d g_ij / d x^k`.
pub type PartialsFn = Arc<dyn Fn(&DVector<f64>) -> Result<Vec<DMatrix<f64>>> + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>;

/// A scalar function on a chart together with its gradient (coordinate
/// partials, not the metric gradient).
#[derive(Clone)]
pub struct ScalarField {
    value: ScalarFn,
    gradient: VectorFn,
}

impl ScalarField {
    pub fn new(
        value: impl Fn(&DVector<f64>) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Arc::new(value),
            gradient: Arc::new(gradient),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self::new(move |_| c, move |_| DVector::zeros(dim))
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        (self.value)(x)
    }

    pub fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        (self.gradient)(x)
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField")
    }
}

/// Christoffel symbols of the second kind, `get(k, i, j) = Gamma^k_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel(Tensor3);

impl Christoffel {
    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.0.get(k, i, j)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `Gamma^k_ij u^i v^j`.
    pub fn contract(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(n, |k, _| {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += self.get(k, i, j) * u[i] * v[j];
                }
            }
            s
        })
    }

    pub fn max_abs_diff(&self, other: &Christoffel) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((self.get(k, i, j) - other.get(k, i, j)).abs());
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }
}

/// A Riemannian metric on a coordinate chart.
///
/// First derivatives come from the exact evaluator when one is supplied and
/// returns finite values; otherwise from central differences with one
/// Richardson level. Second derivatives are always differenced (from the
/// exact first derivatives when available).
#[derive(Clone)]
pub struct CoordinateMetric {
    name: String,
    dim: usize,
    gram_at: MatrixFn,
    partials_at: Option<PartialsFn>,
    fd_step: f64,
    fd_step2: f64,
}

impl fmt::Debug for CoordinateMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoordinateMetric")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("exact_partials", &self.partials_at.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl CoordinateMetric {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        gram_at: impl Fn(&DVector<f64>) -> Result<DMatrix<f64>> + Send + Sync + 'static,
    ) -> Self {
        let tol = Tolerances::default();
        Self {
            name: name.into(),
            dim,
            gram_at: Arc::new(gram_at),
            partials_at: None,
            fd_step: tol.fd_step,
            fd_step2: tol.fd_step2,
        }
    }

    pub fn with_partials(
        mut self,
        partials_at: impl Fn(&DVector<f64>) -> Result<Vec<DMatrix<f64>>> + Send + Sync + 'static,
    ) -> Self {
        self.partials_at = Some(Arc::new(partials_at));
        self
    }

    pub fn with_fd_steps(mut self, first: f64, second: f64) -> Self {
        self.fd_step = first;
        self.fd_step2 = second;
        self
    }

    /// The flat metric on `R^n`.
    pub fn euclidean(n: usize) -> Self {
        Self::new("euclidean", n, move |_| Ok(DMatrix::identity(n, n)))
            .with_partials(move |_| Ok(vec![DMatrix::zeros(n, n); n]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn has_exact_partials(&self) -> bool {
        self.partials_at.is_some()
    }

    fn check_point(&self, x: &DVector<f64>) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    fn raw_gram(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        (self.gram_at)(x)
    }

    /// Metric at `x`; fails unless symmetric positive definite.
    pub fn gram(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let g = self.raw_gram(x)?;
        if g.nrows() != self.dim || g.ncols() != self.dim {
            return Err(Error::MetricDegenerate {
                reason: format!("evaluator returned a {}x{} matrix", g.nrows(), g.ncols()),
            });
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::MetricDegenerate {
                reason: "non-finite entry".into(),
            });
        }
        let asym = (&g - g.transpose()).amax();
        if asym > 1e-12 * g.amax().max(1.0) {
            return Err(Error::MetricDegenerate {
                reason: format!("asymmetric by {asym:e}"),
            });
        }
        if Cholesky::new(g.clone()).is_none() {
            return Err(Error::MetricDegenerate {
                reason: "not positive definite".into(),
            });
        }
        Ok(g)
    }

    pub fn inverse(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        let g = self.gram(x)?;
        Cholesky::new(g)
            .map(|c| c.inverse())
            .ok_or_else(|| Error::MetricDegenerate {
                reason: "not positive definite".into(),
            })
    }

    pub fn inner(&self, x: &DVector<f64>, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
        Ok((u.transpose() * self.gram(x)? * v)[0])
    }

    pub fn norm(&self, x: &DVector<f64>, u: &DVector<f64>) -> Result<f64> {
        Ok(self.inner(x, u, u)?.max(0.0).sqrt())
    }

    fn step(&self, base: f64, xk: f64) -> f64 {
        base * xk.abs().max(1.0)
    }

    /// `d g / d x^k` for each `k`, exact when available.
    pub fn partials(&self, x: &DVector<f64>) -> Result<Vec<DMatrix<f64>>> {
        self.check_point(x)?;
        if let Some(p) = &self.partials_at {
            if let Ok(d) = p(x) {
                if d.len() == self.dim && d.iter().all(|m| m.iter().all(|v| v.is_finite())) {
                    return Ok(d);
                }
            }
        }
        self.partials_fd(x)
    }

    /// Exact first partials, if an evaluator was supplied.
    pub fn partials_exact(&self, x: &DVector<f64>) -> Option<Result<Vec<DMatrix<f64>>>> {
        self.partials_at.as_ref().map(|p| p(x))
    }

    /// Central differences with one Richardson level: `(4 D(h) - D(2h)) / 3`.
    pub fn partials_fd(&self, x: &DVector<f64>) -> Result<Vec<DMatrix<f64>>> {
        self.check_point(x)?;
        let n = self.dim;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let h = self.step(self.fd_step, x[k]);
            let central = |h: f64| -> Result<DMatrix<f64>> {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                Ok((self.raw_gram(&xp)? - self.raw_gram(&xm)?) / (2.0 * h))
            };
            let d1 = central(h)?;
            let d2 = central(2.0 * h)?;
            out.push((4.0 * d1 - d2) / 3.0);
        }
        Ok(out)
    }

    /// `second[k][l] = d^2 g / dx^k dx^l`.
    pub fn second_partials(&self, x: &DVector<f64>) -> Result<Vec<Vec<DMatrix<f64>>>> {
        self.check_point(x)?;
        let n = self.dim;
        let mut out = vec![vec![DMatrix::zeros(n, n); n]; n];
        if self.partials_at.is_some() && self.partials(x).is_ok() {
            // Difference the first partials along each axis.
            for l in 0..n {
                let h = self.step(self.fd_step2, x[l]);
                let central = |h: f64| -> Result<Vec<DMatrix<f64>>> {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[l] += h;
                    xm[l] -= h;
                    let (pp, pm) = (self.partials(&xp)?, self.partials(&xm)?);
                    Ok(pp
                        .iter()
                        .zip(&pm)
                        .map(|(a, b)| (a - b) / (2.0 * h))
                        .collect())
                };
                let d1 = central(h)?;
                let d2 = central(2.0 * h)?;
                for k in 0..n {
                    out[k][l] = (4.0 * &d1[k] - &d2[k]) / 3.0;
                }
            }
            for k in 0..n {
                for l in (k + 1)..n {
                    let avg = 0.5 * (&out[k][l] + &out[l][k]);
                    out[k][l] = avg.clone();
                    out[l][k] = avg;
                }
            }
            return Ok(out);
        }
        let g0 = self.raw_gram(x)?;
        for k in 0..n {
            for l in k..n {
                let hk = self.step(self.fd_step2, x[k]);
                let hl = self.step(self.fd_step2, x[l]);
                let second = |s: f64| -> Result<DMatrix<f64>> {
                    let (hk, hl) = (hk * s, hl * s);
                    if k == l {
                        let mut xp = x.clone();
                        let mut xm = x.clone();
                        xp[k] += hk;
                        xm[k] -= hk;
                        Ok((self.raw_gram(&xp)? - 2.0 * &g0 + self.raw_gram(&xm)?) / (hk * hk))
                    } else {
                        let eval = |sk: f64, sl: f64| -> Result<DMatrix<f64>> {
                            let mut y = x.clone();
                            y[k] += sk * hk;
                            y[l] += sl * hl;
                            self.raw_gram(&y)
                        };
                        Ok((eval(1.0, 1.0)? - eval(1.0, -1.0)? - eval(-1.0, 1.0)?
                            + eval(-1.0, -1.0)?)
                            / (4.0 * hk * hl))
                    }
                };
                let d1 = second(1.0)?;
                let d2 = second(2.0)?;
                let d = (4.0 * d1 - d2) / 3.0;
                out[k][l] = d.clone();
                out[l][k] = d;
            }
        }
        Ok(out)
    }

    /// `Gamma^k_ij = 1/2 g^kl (d_i g_lj + d_j g_li - d_l g_ij)`.
    pub fn christoffel(&self, x: &DVector<f64>) -> Result<Christoffel> {
        let ginv = self.inverse(x)?;
        let d = self.partials(x)?;
        Ok(christoffel_from(&ginv, &d))
    }

    /// Christoffel symbols from differenced metric values only.
    pub fn christoffel_fd(&self, x: &DVector<f64>) -> Result<Christoffel> {
        let ginv = self.inverse(x)?;
        let d = self.partials_fd(x)?;
        Ok(christoffel_from(&ginv, &d))
    }

    /// Christoffel symbols from the exact partials, if supplied.
    pub fn christoffel_exact(&self, x: &DVector<f64>) -> Option<Result<Christoffel>> {
        let p = self.partials_exact(x)?;
        Some(p.and_then(|d| Ok(christoffel_from(&self.inverse(x)?, &d))))
    }

    /// Lowered curvature `R[i][j][k][l] = <R(d_i, d_j) d_k, d_l>` with
    /// `R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]`.
    pub fn riemann(&self, x: &DVector<f64>) -> Result<Tensor4> {
        let n = self.dim;
        let g = self.gram(x)?;
        let ginv = self.inverse(x)?;
        let d = self.partials(x)?;
        let dd = self.second_partials(x)?;
        let gamma = christoffel_from(&ginv, &d);
        // First-kind symbols and their derivatives:
        // G1[a][v][s] = 1/2 (d_v g_as + d_s g_av - d_a g_vs)
        let g1 = |a: usize, v: usize, s: usize| 0.5 * (d[v][(a, s)] + d[s][(a, v)] - d[a][(v, s)]);
        let dg1 = |m: usize, a: usize, v: usize, s: usize| {
            0.5 * (dd[m][v][(a, s)] + dd[m][s][(a, v)] - dd[m][a][(v, s)])
        };
        // d_m g^{ra} = - g^{rb} (d_m g_bc) g^{ca}
        let dginv: Vec<DMatrix<f64>> = (0..n).map(|m| -(&ginv * &d[m] * &ginv)).collect();
        // dGamma[m][r][v][s] = d_m Gamma^r_vs
        let dgamma = |m: usize, r: usize, v: usize, s: usize| {
            let mut acc = 0.0;
            for a in 0..n {
                acc += dginv[m][(r, a)] * g1(a, v, s) + ginv[(r, a)] * dg1(m, a, v, s);
            }
            acc
        };
        // R^r_{s m v} = d_m Gamma^r_vs - d_v Gamma^r_ms + Gamma^r_ml Gamma^l_vs - Gamma^r_vl Gamma^l_ms
        // and <R(d_m, d_v) d_s, d_l> = g_lr R^r_{s m v}.
        let mut raised = vec![0.0; n * n * n * n];
        let idx = |r: usize, s: usize, m: usize, v: usize| ((r * n + s) * n + m) * n + v;
        for r in 0..n {
            for s in 0..n {
                for m in 0..n {
                    for v in 0..n {
                        let mut val = dgamma(m, r, v, s) - dgamma(v, r, m, s);
                        for l in 0..n {
                            val += gamma.get(r, m, l) * gamma.get(l, v, s)
                                - gamma.get(r, v, l) * gamma.get(l, m, s);
                        }
                        raised[idx(r, s, m, v)] = val;
                    }
                }
            }
        }
        let mut out = Tensor4::zeros(n);
        for m in 0..n {
            for v in 0..n {
                for s in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for r in 0..n {
                            acc += g[(l, r)] * raised[idx(r, s, m, v)];
                        }
                        out.set(m, v, s, l, acc);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Sectional curvature of `span(u, v)` at `x`.
    pub fn sectional(&self, x: &DVector<f64>, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
        let g = self.gram(x)?;
        let uu = (u.transpose() * &g * u)[0];
        let vv = (v.transpose() * &g * v)[0];
        let uv = (u.transpose() * &g * v)[0];
        let det = uu * vv - uv * uv;
        if det <= 1e-12 * (uu * vv).max(f64::MIN_POSITIVE) {
            return Err(Error::DegeneratePlane { gram_det: det });
        }
        let r = self.riemann(x)?;
        Ok(r.eval(u, v, v, u) / det)
    }

    /// Pulls the metric back along a chart change `x = map(y)`; `jacobian(y)`
    /// is `d map / d y`.
    pub fn pullback(
        &self,
        name: impl Into<String>,
        map: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static,
        jacobian: impl Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> CoordinateMetric {
        let inner = self.gram_at.clone();
        CoordinateMetric {
            name: name.into(),
            dim: self.dim,
            gram_at: Arc::new(move |y: &DVector<f64>| {
                let j = jacobian(y);
                let g = inner(&map(y))?;
                let p = j.transpose() * g * &j;
                Ok(0.5 * (&p + p.transpose()))
            }),
            partials_at: None,
            fd_step: self.fd_step,
            fd_step2: self.fd_step2,
        }
    }
}

pub(crate) fn christoffel_from(ginv: &DMatrix<f64>, d: &[DMatrix<f64>]) -> Christoffel {
    let n = ginv.nrows();
    let mut t = Tensor3::zeros(n);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += ginv[(k, l)] * (d[i][(l, j)] + d[j][(l, i)] - d[l][(i, j)]);
                }
                t.set(k, i, j, 0.5 * s);
                t.set(k, j, i, 0.5 * s);
            }
        }
    }
    Christoffel(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hyperbolic plane in geodesic polar coordinates, no exact partials.
    fn polar_fd() -> CoordinateMetric {
        CoordinateMetric::new("h2-fd", 2, |x: &DVector<f64>| {
            Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![
                1.0,
                x[0].sinh().powi(2),
            ])))
        })
    }

    #[test]
    fn euclidean_christoffels_vanish() {
        let m = CoordinateMetric::euclidean(3);
        let x = DVector::from_vec(vec![0.1, -2.0, 5.0]);
        assert_eq!(m.christoffel(&x).unwrap().max_abs(), 0.0);
        assert!(m.christoffel_fd(&x).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_polar_christoffels_by_differences() {
        let m = polar_fd();
        let r: f64 = 0.8;
        let x = DVector::from_vec(vec![r, 0.3]);
        let c = m.christoffel(&x).unwrap();
        assert!((c.get(0, 1, 1) + r.sinh() * r.cosh()).abs() < 1e-8);
        assert!((c.get(1, 0, 1) - 1.0 / r.tanh()).abs() < 1e-8);
        assert!((c.get(1, 1, 0) - c.get(1, 0, 1)).abs() < 1e-15);
        assert!(c.get(1, 0, 0).abs() < 1e-9);
    }

    #[test]
    fn hyperbolic_curvature_is_minus_one() {
        let m = polar_fd();
        let x = DVector::from_vec(vec![0.7, 1.1]);
        let e0 = DVector::from_vec(vec![1.0, 0.0]);
        let e1 = DVector::from_vec(vec![0.0, 1.0]);
        let k = m.sectional(&x, &e0, &e1).unwrap();
        assert!((k + 1.0).abs() < 1e-7, "K = {k}");
    }

    #[test]
    fn degenerate_metric_is_an_error() {
        let m = CoordinateMetric::new("bad", 2, |x: &DVector<f64>| {
            Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, x[0]])))
        });
        let x = DVector::from_vec(vec![-1.0, 0.0]);
        assert!(matches!(m.gram(&x), Err(Error::MetricDegenerate { .. })));
        assert!(matches!(
            m.christoffel(&x),
            Err(Error::MetricDegenerate { .. })
        ));
    }
}
