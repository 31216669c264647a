//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Dense rank-3 array, `data[(i * n + j) * n + k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.data[(i * n + j) * n + k] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    /// Contracts the first two slots: `sum_ij x_i y_j t[i][j][.]`.
    pub fn contract12(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += w * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// The matrix `m[i][j] = sum_k t[i][j][k] z_k`.
    pub fn contract3(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| self.get(i, j, k) * z[k]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Dense rank-4 array.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n;
        self.data[((i * n + j) * n + k) * n + l]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let n = self.n;
        self.data[((i * n + j) * n + k) * n + l] = v;
    }

    /// `sum x_i y_j z_k w_l t[i][j][k][l]`.
    pub fn eval(
        &self,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
        w: &DVector<f64>,
    ) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let xyz = xy * z[k];
                    if xyz == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        s += xyz * w[l] * self.get(i, j, k, l);
                    }
                }
            }
        }
        s
    }
}

/// Symmetric eigendecomposition with eigenvalues sorted ascending and
/// eigenvectors as matching columns.
pub fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = m.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let sym = 0.5 * (m + m.transpose());
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Orthonormal basis of `t`'s Euclidean orthogonal complement.
///
/// Uses the Householder reflection taking `t` to the coordinate axis of its
/// largest entry, so the result is deterministic and, when `t` is itself a
/// coordinate vector, equals the remaining coordinate vectors in order.
pub fn complement_of_unit(t: &DVector<f64>) -> Vec<DVector<f64>> {
    let n = t.len();
    let (m, _) =
        t.iter().enumerate().fold(
            (0, -1.0),
            |acc, (i, v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc },
        );
    let mut target = DVector::zeros(n);
    target[m] = t[m].signum();
    let u = t - &target;
    let un = u.norm();
    let reflect = |v: &DVector<f64>| -> DVector<f64> {
        if un < 1e-300 {
            v.clone()
        } else {
            let u = &u / un;
            v - 2.0 * u.dot(v) * &u
        }
    };
    (0..n)
        .filter(|&i| i != m)
        .map(|i| {
            let mut e = DVector::zeros(n);
            e[i] = 1.0;
            let mut v = reflect(&e);
            // Keep orientation close to the coordinate vector.
            if v[i] < 0.0 && un >= 1e-300 {
                v = -v;
            }
            v
        })
        .collect()
}

/// Extends an orthonormal set to an orthonormal basis of its complement
/// (Euclidean). Candidates are coordinate vectors, taken in order.
pub fn orthonormal_complement(onb: &[DVector<f64>], n: usize) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = onb.to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&v);
                v -= c * b;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            v /= norm;
            basis.push(v.clone());
            out.push(v);
        }
    }
    out
}

/// Modified Gram–Schmidt in the inner product given by `gram`.
/// Returns `None` when a vector is (numerically) dependent on its predecessors.
pub fn gram_schmidt(
    vectors: &[DVector<f64>],
    gram: &DMatrix<f64>,
    tol: f64,
) -> Option<Vec<DVector<f64>>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = (q.transpose() * gram * &w)[0];
                w -= c * q;
            }
        }
        let norm = (w.transpose() * gram * &w)[0].max(0.0).sqrt();
        if norm <= tol {
            return None;
        }
        out.push(w / norm);
    }
    Some(out)
}

/// Column-stacked matrix from vectors.
pub fn columns(vectors: &[DVector<f64>], n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, vectors.len(), |r, c| vectors[c][r])
}

pub fn max_abs_matrix(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.abs()))
}

pub fn max_abs_vector(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_coordinate_vector_is_remaining_axes() {
        let t = DVector::from_vec(vec![0.0, 1.0, 0.0, 0.0]);
        let c = complement_of_unit(&t);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0]));
        assert_eq!(c[1], DVector::from_vec(vec![0.0, 0.0, 1.0, 0.0]));
        assert_eq!(c[2], DVector::from_vec(vec![0.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn complement_of_generic_vector_is_orthonormal() {
        let t = DVector::from_vec(vec![0.3, -0.4, 0.5, 0.1]).normalize();
        let c = complement_of_unit(&t);
        for (i, a) in c.iter().enumerate() {
            assert!(a.dot(&t).abs() < 1e-14);
            for (j, b) in c.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((a.dot(b) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eigen_sorted_ascending() {
        let m = DMatrix::from_row_slice(3, 3, &[3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0]);
        let (v, _) = sorted_symmetric_eigen(&m);
        assert_eq!(v.as_slice(), &[-1.0, 2.0, 3.0]);
    }
}
