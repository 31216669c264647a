use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::lie::MetricLieAlgebra;
use crate::linalg;

use super::subspace::{hyperplane_tg_residual, spectral_norm};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub seeds: usize,
    pub max_iterations: usize,
    pub polish_iterations: usize,
    /// Acceptance bound on the hyperplane residual.
    pub threshold: f64,
    pub seed: u64,
    /// Angular merge radius after sign normalization.
    pub dedup_angle: f64,
    /// More distinct passing normals than this signals a continuum.
    pub continuum_count: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seeds: 64,
            max_iterations: 400,
            polish_iterations: 30,
            threshold: 1e-10,
            seed: 0,
            dedup_angle: 1e-4,
            continuum_count: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    /// Unit normals in input coordinates, sign-normalized and sorted.
    pub normals: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub continuum_detected: bool,
    /// Starts that ended below the threshold, before merging.
    pub passing_starts: usize,
}

impl SearchResult {
    pub fn normal_vectors(&self) -> Vec<DVector<f64>> {
        self.normals
            .iter()
            .map(|v| DVector::from_vec(v.clone()))
            .collect()
    }
}

/// Squared Frobenius norm of `P A(T) P` and its Euclidean gradient, where
/// `A(T)_ij = <nabla_{E_i} E_j, T>` and `P = I - T T^T` (frame coordinates).
struct Objective<'a> {
    gamma: &'a crate::linalg::Tensor3,
    n: usize,
}

impl Objective<'_> {
    fn a(&self, t: &DVector<f64>) -> DMatrix<f64> {
        self.gamma.contract3(t)
    }

    fn projector(&self, t: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::identity(self.n, self.n) - t * t.transpose()
    }

    fn residual_matrix(&self, t: &DVector<f64>) -> DMatrix<f64> {
        let p = self.projector(t);
        &p * self.a(t) * &p
    }

    fn value(&self, t: &DVector<f64>) -> f64 {
        self.residual_matrix(t).norm_squared()
    }

    /// Directional derivative of `P A P` along `d`.
    fn d_residual(&self, t: &DVector<f64>, d: &DVector<f64>) -> DMatrix<f64> {
        let p = self.projector(t);
        let a = self.a(t);
        let dp = -(d * t.transpose() + t * d.transpose());
        &dp * &a * &p + &p * self.a(d) * &p + &p * &a * &dp
    }

    fn gradient(&self, t: &DVector<f64>) -> DVector<f64> {
        let m = self.residual_matrix(t);
        let mut g = DVector::zeros(self.n);
        for l in 0..self.n {
            let mut e = DVector::zeros(self.n);
            e[l] = 1.0;
            g[l] = 2.0 * m.dot(&self.d_residual(t, &e));
        }
        // Riemannian gradient on the sphere.
        let radial = g.dot(t);
        g - radial * t
    }
}

fn descend(obj: &Objective, mut t: DVector<f64>, cfg: &SearchConfig) -> DVector<f64> {
    let mut f = obj.value(&t);
    for _ in 0..cfg.max_iterations {
        if f < 1e-28 {
            break;
        }
        let g = obj.gradient(&t);
        let gn2 = g.norm_squared();
        if gn2 < 1e-30 {
            break;
        }
        let mut step = 1.0;
        let mut moved = false;
        while step > 1e-12 {
            let cand = (&t - step * &g).normalize();
            let fc = obj.value(&cand);
            if fc <= f - 1e-4 * step * gn2 {
                t = cand;
                f = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    t
}

/// Gauss-Newton on `vec(P A P)` with steps restricted to the tangent space.
fn polish(obj: &Objective, mut t: DVector<f64>, iterations: usize) -> DVector<f64> {
    let n = obj.n;
    let mut f = obj.value(&t);
    for _ in 0..iterations {
        if f < 1e-32 {
            break;
        }
        let q = linalg::complement_of_unit(&t);
        let r = obj.residual_matrix(&t);
        let r = DVector::from_column_slice(r.as_slice());
        let mut jac = DMatrix::zeros(n * n, n - 1);
        for (c, d) in q.iter().enumerate() {
            let dr = obj.d_residual(&t, d);
            jac.set_column(c, &DVector::from_column_slice(dr.as_slice()));
        }
        let svd = jac.svd(true, true);
        let Ok(delta) = svd.solve(&(-r), 1e-12) else {
            break;
        };
        let step = linalg::columns(&q, n) * delta;
        let cand = (&t + step).normalize();
        let fc = obj.value(&cand);
        if fc < f {
            t = cand;
            f = fc;
        } else {
            break;
        }
    }
    t
}

fn sign_normalize(v: &DVector<f64>) -> DVector<f64> {
    let scale = linalg::max_abs_vector(v).max(f64::MIN_POSITIVE);
    match v.iter().find(|x| x.abs() > 1e-9 * scale) {
        Some(x) if *x < 0.0 => -v,
        _ => v.clone(),
    }
}

fn lexicographic(a: &DVector<f64>, b: &DVector<f64>) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Multistart search for unit normals `T` whose orthogonal hyperplane
/// distribution is integrable with totally geodesic leaves.
///
/// Each start draws from its own ChaCha stream (`seed`, stream = start
/// index), so results do not depend on thread scheduling.
pub fn search_tg_hyperplanes(m: &MetricLieAlgebra, cfg: &SearchConfig) -> SearchResult {
    let n = m.dim();
    let obj = Objective {
        gamma: m.connection().coefficients(),
        n,
    };
    let found: Vec<Option<(DVector<f64>, f64)>> = (0..cfg.seeds)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(s as u64);
            let start: DVector<f64> = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let norm = start.norm();
            if norm < 1e-12 {
                return None;
            }
            let t = descend(&obj, start / norm, cfg);
            let t = polish(&obj, t, cfg.polish_iterations);
            let res = spectral_norm(&(obj.residual_matrix(&t)));
            (res < cfg.threshold).then_some((t, res))
        })
        .collect();
    let passing: Vec<(DVector<f64>, f64)> = found.into_iter().flatten().collect();
    let passing_starts = passing.len();
    // Back to input coordinates, then canonical sign and order.
    let mut cands: Vec<(DVector<f64>, f64)> = passing
        .into_iter()
        .map(|(t, _)| {
            let v = m.from_onb(&t);
            let v = &v / m.norm(&v);
            let v = sign_normalize(&v);
            let r = hyperplane_tg_residual(m, &v).unwrap_or(f64::INFINITY);
            (v, r)
        })
        .filter(|(_, r)| *r < cfg.threshold)
        .collect();
    cands.sort_by(|a, b| lexicographic(&a.0, &b.0));
    let mut kept: Vec<(DVector<f64>, f64)> = Vec::new();
    for (v, r) in cands {
        let dup = kept.iter_mut().find(|(k, _)| {
            let c = m.inner(k, &v).abs().min(1.0);
            c.acos() < cfg.dedup_angle
        });
        match dup {
            Some(slot) => {
                if r < slot.1 {
                    *slot = (v, r);
                }
            }
            None => kept.push((v, r)),
        }
    }
    kept.sort_by(|a, b| lexicographic(&a.0, &b.0));
    SearchResult {
        continuum_detected: kept.len() > cfg.continuum_count,
        normals: kept
            .iter()
            .map(|(v, _)| v.iter().copied().collect())
            .collect(),
        residuals: kept.iter().map(|(_, r)| *r).collect(),
        passing_starts,
    }
}

/// Gradient check used by tests: the objective's gradient against central
/// differences along tangent directions.
#[cfg(test)]
pub(crate) fn gradient_defect(m: &MetricLieAlgebra, t: &DVector<f64>) -> f64 {
    let obj = Objective {
        gamma: m.connection().coefficients(),
        n: m.dim(),
    };
    let g = obj.gradient(t);
    let mut worst: f64 = 0.0;
    for d in linalg::complement_of_unit(t) {
        let h = 1e-6;
        let fp = obj.value(&(t + h * &d));
        let fm = obj.value(&(t - h * &d));
        let fd = (fp - fm) / (2.0 * h);
        worst = worst.max((fd - g.dot(&d)).abs());
    }
    worst
}
