use nalgebra::{DMatrix, DVector};

use crate::linalg::Tensor3;

/// Levi-Civita connection of a left-invariant metric in an orthonormal frame:
/// `nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    gamma: Tensor3,
}

impl ConnectionTable {
    /// `nabla_Y Z = 1/2 [Y, Z] + U(Y, Z)` with the symmetric part `U` defined by
    /// `2 <U(Y, Z), X> = <[X, Y], Z> + <[X, Z], Y>`.
    ///
    /// `c` must be orthonormal-frame constants. Entries are assembled for
    /// `k > j` and mirrored, so skew-symmetry in the last two slots is exact.
    pub fn from_constants(c: &Tensor3) -> Self {
        let n = c.dim();
        let mut gamma = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    let half_bracket = 0.5 * c.get(i, j, k);
                    let sym = 0.5 * (c.get(k, i, j) + c.get(k, j, i));
                    let v = half_bracket + sym;
                    gamma.set(i, j, k, v);
                    gamma.set(i, k, j, -v);
                }
            }
        }
        Self { gamma }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn coefficients(&self) -> &Tensor3 {
        &self.gamma
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma.get(i, j, k)
    }

    /// `nabla_x y` for frame coordinates.
    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.gamma.contract12(x, y)
    }

    /// Matrix of `v -> nabla_t v`; skew-symmetric.
    pub fn derivative_operator(&self, t: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |k, j| {
            (0..n).map(|i| t[i] * self.gamma.get(i, j, k)).sum()
        })
    }

    /// `max |gamma[i][j][.] - gamma[j][i][.] - c[i][j][.]|`.
    pub fn torsion_residual(&self, c: &Tensor3) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = self.get(i, j, k) - self.get(j, i, k) - c.get(i, j, k);
                    worst = worst.max(t.abs());
                }
            }
        }
        worst
    }

    /// `max |gamma[i][j][k] + gamma[i][k][j]|`.
    pub fn metric_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.get(i, j, k) + self.get(i, k, j)).abs());
                }
            }
        }
        worst
    }
}
