use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, MetricLieAlgebra, Subspace};
use crate::linalg::{self, Tensor3};
use crate::tolerances::Tolerances;

use super::frenet::frenet_orbit;
use super::search::{search_tg_hyperplanes, SearchConfig};

/// Certificate that the orbit of `T` is a helix of order two whose span
/// `Λ = span(T, N1, N2)` is complementary to an ideal `I = Λ^⊥`, with
/// `g / I` the three-dimensional algebra of the bracket table
/// `[T,N1] = k2 N2 - k1 T`, `[T,N2] = -k2 N1`, `[N1,N2] = -k1 N2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelixWitness {
    pub t: Vec<f64>,
    pub n1: Vec<f64>,
    pub n2: Vec<f64>,
    pub k1: f64,
    pub k2: f64,
    #[serde(skip)]
    pub lambda: Subspace,
    #[serde(skip)]
    pub s: Subspace,
    #[serde(skip)]
    pub ideal: Subspace,
    pub ideal_dim: usize,
    /// `q[a][b][c] = <[λ_a, λ_b], λ_c>` for `λ = (T, N1, N2)`.
    pub quotient_constants: Vec<Vec<Vec<f64>>>,
    pub recovered_a: f64,
    pub recovered_b: f64,
    /// `ideal_residual`, `bracket_table_residual`, `sl2_residual`.
    pub residuals: BTreeMap<String, f64>,
}

impl HelixWitness {
    pub fn quotient_tensor(&self) -> Tensor3 {
        Tensor3::from_fn(3, |a, b, c| self.quotient_constants[a][b][c])
    }
}

/// Expected quotient constants for curvatures `(k1, k2)` in the basis
/// `(T, N1, N2)`.
pub fn helix_bracket_table(k1: f64, k2: f64) -> Tensor3 {
    let mut c = Tensor3::zeros(3);
    let mut put = |i: usize, j: usize, v: [f64; 3]| {
        for (k, x) in v.iter().enumerate() {
            c.set(i, j, k, *x);
            c.set(j, i, k, -*x);
        }
    };
    put(0, 1, [-k1, 0.0, k2]);
    put(0, 2, [0.0, -k2, 0.0]);
    put(1, 2, [0.0, 0.0, -k1]);
    c
}

fn max_abs_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                worst = worst.max((a.get(i, j, k) - b.get(i, j, k)).abs());
            }
        }
    }
    worst
}

fn frame_constants(m: &MetricLieAlgebra, basis: &[DVector<f64>]) -> Tensor3 {
    let d = basis.len();
    Tensor3::from_fn(d, |a, b, c| {
        m.bracket_onb(&basis[a], &basis[b]).dot(&basis[c])
    })
}

pub fn helix_witness(m: &MetricLieAlgebra, t: &DVector<f64>) -> Result<HelixWitness> {
    let n = m.dim();
    let tol = *m.tolerances();
    let f = frenet_orbit(m, t, 3.min(n - 1))?;
    if f.order != 2 {
        return Err(Error::NotHelixOrderTwo { order: f.order });
    }
    let (k1, k2) = (f.curvatures[0], f.curvatures[1]);
    let input: Vec<DVector<f64>> = f.frame_vectors();
    let lam: Vec<DVector<f64>> = input.iter().map(|v| m.to_onb(v)).collect();
    let ideal = linalg::orthonormal_complement(&lam, n);
    let mut ideal_residual: f64 = 0.0;
    for i in 0..n {
        let mut e = DVector::zeros(n);
        e[i] = 1.0;
        for v in &ideal {
            let b = m.bracket_onb(&e, v);
            for l in &lam {
                ideal_residual = ideal_residual.max(b.dot(l).abs());
            }
        }
    }
    if ideal_residual > tol.helix {
        return Err(Error::IdealResidualExceeded {
            residual: ideal_residual,
        });
    }
    let q = frame_constants(m, &lam);
    let table = max_abs_diff(&q, &helix_bracket_table(k1, k2));
    let (recovered_a, recovered_b) = (k2 / 2.0, k1 / 2.0);
    let sl2_residual = match sl2_recognize_with(&q, &DMatrix::identity(3, 3), &tol) {
        Ok(r) => (r.a - recovered_a)
            .abs()
            .max((r.b - recovered_b).abs())
            .max(r.residual),
        Err(_) => f64::INFINITY,
    };
    let to_input = |vs: &[DVector<f64>]| -> Subspace {
        let cols: Vec<DVector<f64>> = vs.iter().map(|v| m.from_onb(v)).collect();
        if cols.is_empty() {
            Subspace::zero(n)
        } else {
            Subspace::from_orthonormal_unchecked(linalg::columns(&cols, n))
        }
    };
    let mut residuals = BTreeMap::new();
    residuals.insert("ideal_residual".to_string(), ideal_residual);
    residuals.insert("bracket_table_residual".to_string(), table);
    residuals.insert("sl2_residual".to_string(), sl2_residual);
    let vec_of = |v: &DVector<f64>| v.iter().copied().collect::<Vec<f64>>();
    Ok(HelixWitness {
        t: vec_of(&input[0]),
        n1: vec_of(&input[1]),
        n2: vec_of(&input[2]),
        k1,
        k2,
        lambda: to_input(&lam),
        s: to_input(&lam[1..]),
        ideal_dim: ideal.len(),
        ideal: to_input(&ideal),
        quotient_constants: (0..3)
            .map(|a| {
                (0..3)
                    .map(|b| (0..3).map(|c| q.get(a, b, c)).collect())
                    .collect()
            })
            .collect(),
        recovered_a,
        recovered_b,
        residuals,
    })
}

/// A recognized copy of sl(2) with its distinguished orthonormal frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sl2Recognition {
    pub a: f64,
    pub b: f64,
    /// `(T, N1, N2)` in input coordinates.
    pub frame: [Vec<f64>; 3],
    pub residual: f64,
}

pub fn sl2_recognize(c: &Tensor3, gram: &DMatrix<f64>) -> Result<Sl2Recognition> {
    sl2_recognize_with(c, gram, &Tolerances::default())
}

/// Identifies a 3-dimensional metric Lie algebra with sl(2) carrying the
/// metric in which `(T, N1, N2)` satisfies the helix bracket table.
///
/// The Killing form screens out solvable (degenerate) and compact (definite)
/// algebras; candidate frames come from totally geodesic hyperplane normals.
pub fn sl2_recognize_with(
    c: &Tensor3,
    gram: &DMatrix<f64>,
    tol: &Tolerances,
) -> Result<Sl2Recognition> {
    if c.dim() != 3 || gram.nrows() != 3 {
        return Err(Error::NotRecognized {
            reason: format!("dimension {} is not 3", c.dim()),
        });
    }
    let algebra = LieAlgebra::with_tolerances(c.clone(), tol)?;
    let m = MetricLieAlgebra::with_tolerances(algebra, gram.clone(), *tol)?;
    let killing = killing_form(m.onb_constants());
    let (eigs, _) = linalg::sorted_symmetric_eigen(&killing);
    let scale = eigs.amax();
    if scale == 0.0 || eigs.iter().any(|e| e.abs() < 1e-8 * scale) {
        return Err(Error::NotRecognized {
            reason: "Killing form is degenerate (not semisimple)".into(),
        });
    }
    if eigs.iter().all(|e| *e > 0.0) || eigs.iter().all(|e| *e < 0.0) {
        return Err(Error::NotRecognized {
            reason: "Killing form is definite (compact type)".into(),
        });
    }
    let cfg = SearchConfig {
        seeds: 24,
        threshold: 1e-9,
        ..SearchConfig::default()
    };
    let normals = search_tg_hyperplanes(&m, &cfg).normal_vectors();
    let mut best: Option<Sl2Recognition> = None;
    for t0 in normals {
        for t in [t0.clone(), -t0] {
            let Ok(f) = frenet_orbit(&m, &t, 2) else {
                continue;
            };
            if f.order != 2 {
                continue;
            }
            let fr = f.frame_vectors();
            let lam: Vec<DVector<f64>> = fr.iter().map(|v| m.to_onb(v)).collect();
            let q = frame_constants(&m, &lam);
            let (k1, k2) = (f.curvatures[0], f.curvatures[1]);
            let residual = max_abs_diff(&q, &helix_bracket_table(k1, k2));
            if residual < tol.sl2 && best.as_ref().is_none_or(|b| residual < b.residual) {
                best = Some(Sl2Recognition {
                    a: k2 / 2.0,
                    b: k1 / 2.0,
                    frame: [
                        fr[0].iter().copied().collect(),
                        fr[1].iter().copied().collect(),
                        fr[2].iter().copied().collect(),
                    ],
                    residual,
                });
            }
        }
    }
    best.ok_or_else(|| Error::NotRecognized {
        reason: "no orthonormal frame satisfies the helix bracket table".into(),
    })
}

/// `B(X, Y) = tr(ad X ad Y)` in the frame of `c`.
pub fn killing_form(c: &Tensor3) -> DMatrix<f64> {
    let n = c.dim();
    // ad(e_i)[k][j] = c[i][j][k]
    let ad: Vec<DMatrix<f64>> = (0..n)
        .map(|i| DMatrix::from_fn(n, n, |k, j| c.get(i, j, k)))
        .collect();
    DMatrix::from_fn(n, n, |i, j| (&ad[i] * &ad[j]).trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_constants(a: f64, b: f64) -> Tensor3 {
        crate::lie::constants_from_brackets(
            3,
            &[
                (0, 1, vec![0.0, 0.0, 2.0 * a]),
                (0, 2, vec![2.0 * b, -2.0 * a, 0.0]),
                (1, 2, vec![0.0, -2.0 * b, 0.0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sl2_self_witness() {
        let m = MetricLieAlgebra::orthonormal(LieAlgebra::new(sl2_constants(1.0, 1.0)).unwrap());
        let t = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let w = helix_witness(&m, &t).unwrap();
        assert_eq!(w.ideal_dim, 0);
        assert_eq!((w.recovered_a, w.recovered_b), (1.0, 1.0));
        assert!(w.residuals.values().all(|r| *r < 1e-9), "{:?}", w.residuals);
    }

    #[test]
    fn heisenberg_not_recognized() {
        let c = crate::lie::constants_from_brackets(3, &[(0, 1, vec![0.0, 0.0, 1.0])]).unwrap();
        assert!(matches!(
            sl2_recognize(&c, &DMatrix::identity(3, 3)),
            Err(Error::NotRecognized { .. })
        ));
    }

    #[test]
    fn so3_not_recognized() {
        let c = crate::lie::constants_from_brackets(
            3,
            &[
                (0, 1, vec![0.0, 0.0, 1.0]),
                (0, 2, vec![0.0, -1.0, 0.0]),
                (1, 2, vec![1.0, 0.0, 0.0]),
            ],
        )
        .unwrap();
        assert!(matches!(
            sl2_recognize(&c, &DMatrix::identity(3, 3)),
            Err(Error::NotRecognized { .. })
        ));
    }

    #[test]
    fn recognizes_table_constants() {
        let r = sl2_recognize(&helix_bracket_table(1.0, 4.0), &DMatrix::identity(3, 3)).unwrap();
        assert!(
            (r.a - 2.0).abs() < 1e-8 && (r.b - 0.5).abs() < 1e-8,
            "{r:?}"
        );
    }

    #[test]
    fn killing_form_of_sl2_is_indefinite() {
        let k = killing_form(&sl2_constants(1.0, 1.0));
        let (e, _) = linalg::sorted_symmetric_eigen(&k);
        assert!(e[0] < 0.0 && e[2] > 0.0);
    }
}
