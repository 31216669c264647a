use nalgebra::{DMatrix, DVector};

use crate::linalg::{self, Tensor3, Tensor4};

use super::connection::ConnectionTable;

/// Curvature of a left-invariant metric in an orthonormal frame.
///
/// `components[i][j][k][l] = <R(E_i, E_j) E_k, E_l>` with
/// `R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]`.
///
/// The curvature operator acts on 2-vectors in the basis `E_i ^ E_j`
/// (`i < j`, lexicographic), which is orthonormal for the natural inner
/// product. Its sign is fixed so that `R(T ^ X) = (R_T X) ^ T` with the
/// Jacobi operator `R_T X = R(T, X) T`; on a space of constant curvature `c`
/// it is `c` times the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    components: Tensor4,
    pairs: Vec<(usize, usize)>,
    operator: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl CurvatureData {
    pub fn from_connection(c: &Tensor3, gamma: &ConnectionTable) -> Self {
        let n = c.dim();
        let mut r = Tensor4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += gamma.get(j, k, m) * gamma.get(i, m, l)
                                - gamma.get(i, k, m) * gamma.get(j, m, l)
                                - c.get(i, j, m) * gamma.get(m, k, l);
                        }
                        r.set(i, j, k, l, s);
                    }
                }
            }
        }
        Self::from_components(r)
    }

    pub fn from_components(components: Tensor4) -> Self {
        let n = components.dim();
        let pairs = bivector_pairs(n);
        let p = pairs.len();
        let operator = DMatrix::from_fn(p, p, |a, b| {
            let (i, j) = pairs[a];
            let (k, l) = pairs[b];
            components.get(i, j, l, k)
        });
        let (eigenvalues, eigenvectors) = linalg::sorted_symmetric_eigen(&operator);
        Self {
            components,
            pairs,
            operator,
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.components.dim()
    }

    pub fn components(&self) -> &Tensor4 {
        &self.components
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.components.get(i, j, k, l)
    }

    /// Lexicographic `(i, j)`, `i < j`, indexing the 2-vector basis.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn operator_matrix(&self) -> &DMatrix<f64> {
        &self.operator
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, matching `eigenvalues`.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Coordinates of `x ^ y` in the pair basis (frame coordinates).
    pub fn wedge(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        wedge(&self.pairs, x, y)
    }

    /// Largest violation of the pair symmetries
    /// `R_ijkl = -R_jikl = -R_ijlk = R_klij`.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l);
                        worst = worst
                            .max((r + self.get(j, i, k, l)).abs())
                            .max((r + self.get(i, j, l, k)).abs())
                            .max((r - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }

    /// First Bianchi: `R_ijkl + R_jkil + R_kijl = 0`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn operator_symmetry_residual(&self) -> f64 {
        linalg::max_abs_matrix(&(&self.operator - self.operator.transpose()))
    }

    /// `max |V diag(w) V^T - operator|`.
    pub fn reconstruction_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        let rebuilt = v * DMatrix::from_diagonal(&self.eigenvalues) * v.transpose();
        linalg::max_abs_matrix(&(rebuilt - &self.operator))
    }

    /// `R_T X = R(X, T) T`, whose quadratic form is `K(T, X) |X|^2` for unit `T ⟂ X`.
    pub fn jacobi_operator(&self, t: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut j = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for p in 0..n {
                    for q in 0..n {
                        s += t[p] * t[q] * self.get(a, p, q, b);
                    }
                }
                j[(b, a)] = s;
            }
        }
        j
    }
}

pub(crate) fn bivector_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

pub(crate) fn wedge(pairs: &[(usize, usize)], x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(
        pairs.len(),
        pairs.iter().map(|&(i, j)| x[i] * y[j] - x[j] * y[i]),
    )
}
