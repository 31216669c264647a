use std::sync::OnceLock;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, Tensor3};
use crate::tolerances::Tolerances;

use super::connection::ConnectionTable;
use super::curvature::CurvatureData;

/// A real Lie algebra given by structure constants,
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    constants: Tensor3,
}

impl LieAlgebra {
    pub const MIN_DIM: usize = 2;
    pub const MAX_DIM: usize = 8;

    /// Validates antisymmetry and the Jacobi identity with default tolerances.
    pub fn new(constants: Tensor3) -> Result<Self> {
        Self::with_tolerances(constants, &Tolerances::default())
    }

    pub fn with_tolerances(constants: Tensor3, tol: &Tolerances) -> Result<Self> {
        let n = constants.dim();
        if !(Self::MIN_DIM..=Self::MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = constants.get(i, j, k) + constants.get(j, i, k);
                    if s.abs() > tol.antisymmetry || !constants.get(i, j, k).is_finite() {
                        return Err(Error::NotAntisymmetric { i, j, k, value: s });
                    }
                }
            }
        }
        let algebra = Self { constants };
        let (residual, (i, j, k)) = algebra.jacobi_residual_with_witness();
        if residual > tol.jacobi {
            return Err(Error::JacobiViolation { residual, i, j, k });
        }
        Ok(algebra)
    }

    /// Builds the constants from the upper-triangular bracket list
    /// `[e_i, e_j] = coeffs` (i < j); omitted pairs are zero.
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, Vec<f64>)]) -> Result<Self> {
        Self::from_brackets_with_tolerances(n, brackets, &Tolerances::default())
    }

    pub fn from_brackets_with_tolerances(
        n: usize,
        brackets: &[(usize, usize, Vec<f64>)],
        tol: &Tolerances,
    ) -> Result<Self> {
        Self::with_tolerances(constants_from_brackets(n, brackets)?, tol)
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Result<Self> {
        Self::new(Tensor3::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn structure_constants(&self) -> &Tensor3 {
        &self.constants
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        check_len(self.dim(), x)?;
        check_len(self.dim(), y)?;
        Ok(self.constants.contract12(x, y))
    }

    /// Max-norm of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    /// over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        self.jacobi_residual_with_witness().0
    }

    fn jacobi_residual_with_witness(&self) -> (f64, (usize, usize, usize)) {
        jacobi_residual_of(&self.constants)
    }

    /// Orthogonal direct sum with another algebra; the basis of `self` comes first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        if n > Self::MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        let c = Tensor3::from_fn(n, |i, j, k| {
            if i < n1 && j < n1 && k < n1 {
                self.constants.get(i, j, k)
            } else if i >= n1 && j >= n1 && k >= n1 {
                other.constants.get(i - n1, j - n1, k - n1)
            } else {
                0.0
            }
        });
        LieAlgebra::new(c)
    }

    /// Structure constants in the basis `f_a = sum_i basis[(i, a)] e_i`.
    pub fn change_basis(&self, basis: &DMatrix<f64>) -> Result<LieAlgebra> {
        let n = self.dim();
        if basis.nrows() != n || basis.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: basis.ncols(),
            });
        }
        let inv = basis
            .clone()
            .try_inverse()
            .ok_or(Error::DegenerateSubspace {
                smallest_singular_value: 0.0,
            })?;
        let c = transform_constants(&self.constants, basis, &inv);
        LieAlgebra::new(c)
    }
}

/// Upper-triangular bracket list to a full antisymmetric tensor.
pub fn constants_from_brackets(n: usize, brackets: &[(usize, usize, Vec<f64>)]) -> Result<Tensor3> {
    if !(LieAlgebra::MIN_DIM..=LieAlgebra::MAX_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut c = Tensor3::zeros(n);
    for (i, j, coeffs) in brackets {
        let (i, j) = (*i, *j);
        if i >= j || j >= n {
            return Err(Error::BadParams(format!(
                "bracket pair ({i},{j}) must satisfy i < j < {n}"
            )));
        }
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        for (k, &v) in coeffs.iter().enumerate() {
            c.set(i, j, k, v);
            c.set(j, i, k, -v);
        }
    }
    Ok(c)
}

pub(crate) fn jacobi_residual_of(c: &Tensor3) -> (f64, (usize, usize, usize)) {
    let n = c.dim();
    let mut worst = (0.0, (0, 0, 0));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += c.get(i, j, l) * c.get(l, k, m)
                            + c.get(j, k, l) * c.get(l, i, m)
                            + c.get(k, i, l) * c.get(l, j, m);
                    }
                    if s.abs() > worst.0 {
                        worst = (s.abs(), (i, j, k));
                    }
                }
            }
        }
    }
    worst
}

/// Structure constants in a new basis given by the columns of `basis`
/// (`inv` is its inverse). Exactly antisymmetric by construction.
pub(crate) fn transform_constants(
    c: &Tensor3,
    basis: &DMatrix<f64>,
    inv: &DMatrix<f64>,
) -> Tensor3 {
    let n = c.dim();
    let mut out = Tensor3::zeros(n);
    for a in 0..n {
        for b in (a + 1)..n {
            let x = basis.column(a).into_owned();
            let y = basis.column(b).into_owned();
            let v = inv * c.contract12(&x, &y);
            for k in 0..n {
                out.set(a, b, k, v[k]);
                out.set(b, a, k, -v[k]);
            }
        }
    }
    out
}

fn check_len(n: usize, x: &DVector<f64>) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok(())
}

/// A Lie algebra with an inner product: the algebraic model of a Lie group
/// with a left-invariant metric.
///
/// Vectors passed in or out of the public API are coordinates in the input
/// basis `e_i`. Internally everything is computed in the cached orthonormal
/// frame `E_a = sum_i onb_change[(i, a)] e_i`.
#[derive(Debug)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    gram: DMatrix<f64>,
    onb_change: DMatrix<f64>,
    onb_inverse: DMatrix<f64>,
    onb_constants: Tensor3,
    tolerances: Tolerances,
    connection: OnceLock<ConnectionTable>,
    curvature: OnceLock<CurvatureData>,
}

impl Clone for MetricLieAlgebra {
    fn clone(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            gram: self.gram.clone(),
            onb_change: self.onb_change.clone(),
            onb_inverse: self.onb_inverse.clone(),
            onb_constants: self.onb_constants.clone(),
            tolerances: self.tolerances,
            connection: self.connection.clone(),
            curvature: self.curvature.clone(),
        }
    }
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, gram: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerances(algebra, gram, Tolerances::default())
    }

    /// An algebra whose input basis is orthonormal.
    pub fn orthonormal(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        Self::new(algebra, DMatrix::identity(n, n)).expect("identity Gram matrix is valid")
    }

    pub fn with_tolerances(
        algebra: LieAlgebra,
        gram: DMatrix<f64>,
        tolerances: Tolerances,
    ) -> Result<Self> {
        let n = algebra.dim();
        if gram.nrows() != n || gram.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: gram.nrows(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let d = (gram[(i, j)] - gram[(j, i)]).abs();
                if d > tolerances.gram_symmetry || !gram[(i, j)].is_finite() {
                    return Err(Error::GramNotSymmetric { i, j, value: d });
                }
            }
        }
        let gram = 0.5 * (&gram + gram.transpose());
        let (eigs, _) = linalg::sorted_symmetric_eigen(&gram);
        if eigs[0] <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                smallest_eigenvalue: eigs[0],
            });
        }
        let chol = Cholesky::new(gram.clone()).ok_or(Error::NotPositiveDefinite {
            smallest_eigenvalue: eigs[0],
        })?;
        let l_inv = chol.l().try_inverse().ok_or(Error::NotPositiveDefinite {
            smallest_eigenvalue: eigs[0],
        })?;
        let raw = l_inv.transpose();
        // One modified Gram–Schmidt pass in the Gram inner product.
        let cols: Vec<DVector<f64>> = (0..n).map(|c| raw.column(c).into_owned()).collect();
        let polished =
            linalg::gram_schmidt(&cols, &gram, 0.0).ok_or(Error::NotPositiveDefinite {
                smallest_eigenvalue: eigs[0],
            })?;
        let onb_change = linalg::columns(&polished, n);
        let onb_inverse = onb_change.transpose() * &gram;
        let onb_constants =
            transform_constants(algebra.structure_constants(), &onb_change, &onb_inverse);
        Ok(Self {
            algebra,
            gram,
            onb_change,
            onb_inverse,
            onb_constants,
            tolerances,
            connection: OnceLock::new(),
            curvature: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Columns are the orthonormal frame in input coordinates.
    pub fn onb_change(&self) -> &DMatrix<f64> {
        &self.onb_change
    }

    /// Structure constants in the orthonormal frame.
    pub fn onb_constants(&self) -> &Tensor3 {
        &self.onb_constants
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn to_onb(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.onb_inverse * x
    }

    pub fn from_onb(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.onb_change * x
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.gram * y)[0]
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    pub fn check_dim(&self, x: &DVector<f64>) -> Result<()> {
        check_len(self.dim(), x)
    }

    /// `||T|| = 1` check; returns `T` in frame coordinates.
    pub fn unit_to_onb(&self, t: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(t)?;
        let norm = self.norm(t);
        if (norm - 1.0).abs() > self.tolerances.unit_norm {
            return Err(Error::NonUnitVector { norm });
        }
        Ok(self.to_onb(t))
    }

    /// `[x, y]` in input coordinates.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.algebra.bracket(x, y)
    }

    /// Bracket of frame-coordinate vectors, in frame coordinates.
    pub fn bracket_onb(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.onb_constants.contract12(x, y)
    }

    pub fn connection(&self) -> &ConnectionTable {
        self.connection
            .get_or_init(|| ConnectionTable::from_constants(&self.onb_constants))
    }

    pub fn curvature(&self) -> &CurvatureData {
        self.curvature
            .get_or_init(|| CurvatureData::from_connection(&self.onb_constants, self.connection()))
    }

    /// `nabla_x y` for left-invariant fields, input coordinates.
    pub fn covariant(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let v = self.connection().apply(&self.to_onb(x), &self.to_onb(y));
        Ok(self.from_onb(&v))
    }

    /// Sectional curvature of `span(x, y)`.
    pub fn sectional(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let (xo, yo) = (self.to_onb(x), self.to_onb(y));
        let det = xo.norm_squared() * yo.norm_squared() - xo.dot(&yo).powi(2);
        let scale = (xo.norm_squared() * yo.norm_squared()).max(f64::MIN_POSITIVE);
        if det <= self.tolerances.plane * scale {
            return Err(Error::DegeneratePlane { gram_det: det });
        }
        Ok(self.curvature().components().eval(&xo, &yo, &yo, &xo) / det)
    }

    /// The same metric Lie algebra written in a new input basis
    /// `f_a = sum_i basis[(i, a)] e_i`.
    pub fn change_basis(&self, basis: &DMatrix<f64>) -> Result<MetricLieAlgebra> {
        let algebra = self.algebra.change_basis(basis)?;
        let gram = basis.transpose() * &self.gram * basis;
        let gram = 0.5 * (&gram + gram.transpose());
        MetricLieAlgebra::with_tolerances(algebra, gram, self.tolerances)
    }

    /// Orthogonal direct sum; the Gram matrix is block diagonal.
    pub fn direct_sum(&self, other: &MetricLieAlgebra) -> Result<MetricLieAlgebra> {
        let algebra = self.algebra.direct_sum(&other.algebra)?;
        let (n1, n2) = (self.dim(), other.dim());
        let mut gram = DMatrix::zeros(n1 + n2, n1 + n2);
        gram.view_mut((0, 0), (n1, n1)).copy_from(&self.gram);
        gram.view_mut((n1, n1), (n2, n2)).copy_from(&other.gram);
        MetricLieAlgebra::with_tolerances(algebra, gram, self.tolerances)
    }
}

/// A linear subspace of a metric Lie algebra, stored as columns in input
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DMatrix<f64>,
    orthonormal: bool,
}

impl Subspace {
    /// Validates linear independence of the columns.
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(basis, Tolerances::default().independence)
    }

    pub fn with_tolerance(basis: DMatrix<f64>, independence: f64) -> Result<Self> {
        let ambient_dim = basis.nrows();
        if basis.ncols() > 0 {
            let sv = basis.clone().singular_values();
            let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            if smallest <= independence {
                return Err(Error::DegenerateSubspace {
                    smallest_singular_value: smallest,
                });
            }
        }
        Ok(Self {
            ambient_dim,
            basis,
            orthonormal: false,
        })
    }

    pub fn from_vectors(vectors: &[DVector<f64>], n: usize) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        Self::new(linalg::columns(vectors, n))
    }

    /// The zero subspace of an `n`-dimensional algebra.
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: DMatrix::zeros(n, 0),
            orthonormal: true,
        }
    }

    /// Orthonormalizes the columns in `m`'s inner product.
    pub fn orthonormalized(&self, m: &MetricLieAlgebra) -> Result<Subspace> {
        if self.ambient_dim != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                got: self.ambient_dim,
            });
        }
        let cols: Vec<DVector<f64>> = (0..self.dim())
            .map(|c| self.basis.column(c).into_owned())
            .collect();
        let onb = linalg::gram_schmidt(&cols, m.gram(), m.tolerances().independence).ok_or(
            Error::DegenerateSubspace {
                smallest_singular_value: 0.0,
            },
        )?;
        Ok(Subspace {
            ambient_dim: self.ambient_dim,
            basis: linalg::columns(&onb, self.ambient_dim),
            orthonormal: true,
        })
    }

    pub(crate) fn from_orthonormal_unchecked(basis: DMatrix<f64>) -> Self {
        Self {
            ambient_dim: basis.nrows(),
            basis,
            orthonormal: true,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn vectors(&self) -> Vec<DVector<f64>> {
        (0..self.dim())
            .map(|c| self.basis.column(c).into_owned())
            .collect()
    }

    /// `max |basis^T gram basis - I|`.
    pub fn orthonormality_defect(&self, m: &MetricLieAlgebra) -> f64 {
        let g = self.basis.transpose() * m.gram() * &self.basis;
        let id = DMatrix::<f64>::identity(self.dim(), self.dim());
        linalg::max_abs_matrix(&(g - id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonhomo() -> LieAlgebra {
        LieAlgebra::from_brackets(
            4,
            &[
                (0, 1, vec![0.0, 1.0, 1.0, 0.0]),
                (0, 2, vec![0.0, -1.0, 1.0, 0.0]),
                (0, 3, vec![0.0, 0.0, 0.0, 2.0]),
            ],
        )
        .unwrap()
    }

    fn e(n: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let a = LieAlgebra::abelian(3).unwrap();
        let x = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let y = DVector::from_vec(vec![-1.0, 0.5, 4.0]);
        assert_eq!(a.bracket(&x, &y).unwrap(), DVector::zeros(3));
        assert_eq!(a.jacobi_residual(), 0.0);
    }

    #[test]
    fn nonhomo_bracket_z_x1() {
        let a = nonhomo();
        let b = a.bracket(&e(4, 0), &e(4, 1)).unwrap();
        assert_eq!(b, DVector::from_vec(vec![0.0, 1.0, 1.0, 0.0]));
        assert_eq!(a.jacobi_residual(), 0.0);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let a = nonhomo();
        assert!(matches!(
            a.bracket(&e(3, 0), &e(4, 1)),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    fn sl2_with(e1e2: Vec<f64>, e2e3: Vec<f64>) -> Tensor3 {
        constants_from_brackets(
            3,
            &[(0, 1, e1e2), (0, 2, vec![2.0, -2.0, 0.0]), (1, 2, e2e3)],
        )
        .unwrap()
    }

    #[test]
    fn rescaling_e1e2_keeps_jacobi() {
        // [E1,E2] = alpha E3 is a Lie algebra for every alpha.
        let (res, _) = jacobi_residual_of(&sl2_with(vec![0.0, 0.0, 2.1], vec![0.0, -2.0, 0.0]));
        assert!(res < 1e-14, "residual {res}");
    }

    #[test]
    fn perturbed_sl2_fails_jacobi() {
        for c in [
            sl2_with(vec![0.1, 0.0, 2.0], vec![0.0, -2.0, 0.0]),
            sl2_with(vec![0.0, 0.0, 2.0], vec![0.0, -2.0, 0.1]),
        ] {
            let (res, _) = jacobi_residual_of(&c);
            assert!((res - 0.2).abs() < 1e-12, "residual {res}");
            assert!(matches!(
                LieAlgebra::new(c),
                Err(Error::JacobiViolation { .. })
            ));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            LieAlgebra::abelian(1),
            Err(Error::UnsupportedDimension(1))
        ));
        assert!(matches!(
            LieAlgebra::abelian(9),
            Err(Error::UnsupportedDimension(9))
        ));
        let mut c = Tensor3::zeros(2);
        c.set(0, 1, 1, 1.0);
        assert!(matches!(
            LieAlgebra::new(c),
            Err(Error::NotAntisymmetric { .. })
        ));
        let a = LieAlgebra::abelian(2).unwrap();
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        match MetricLieAlgebra::new(a.clone(), g) {
            Err(Error::NotPositiveDefinite {
                smallest_eigenvalue,
            }) => {
                assert!((smallest_eigenvalue + 1.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(
            MetricLieAlgebra::new(a, g),
            Err(Error::GramNotSymmetric { .. })
        ));
    }

    #[test]
    fn frame_is_orthonormal_for_skewed_gram() {
        let g = DMatrix::from_row_slice(
            4,
            4,
            &[
                2.0, 0.3, 0.1, 0.0, //
                0.3, 1.5, -0.2, 0.4, //
                0.1, -0.2, 3.0, 0.5, //
                0.0, 0.4, 0.5, 1.2,
            ],
        );
        let m = MetricLieAlgebra::new(nonhomo(), g.clone()).unwrap();
        let p = m.onb_change();
        let defect = p.transpose() * &g * p - DMatrix::<f64>::identity(4, 4);
        assert!(linalg::max_abs_matrix(&defect) < 1e-12);
        let x = DVector::from_vec(vec![0.2, -1.0, 0.7, 0.3]);
        assert!((m.from_onb(&m.to_onb(&x)) - &x).norm() < 1e-12);
    }

    #[test]
    fn onb_constants_match_input_bracket() {
        let g = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 0.2, 0.0, 0.0, //
                0.2, 2.0, 0.0, 0.1, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.1, 0.0, 0.5,
            ],
        );
        let m = MetricLieAlgebra::new(nonhomo(), g).unwrap();
        let x = DVector::from_vec(vec![0.3, 1.0, -0.5, 2.0]);
        let y = DVector::from_vec(vec![-1.0, 0.4, 0.9, 0.1]);
        let direct = m.bracket(&x, &y).unwrap();
        let via_frame = m.from_onb(&m.bracket_onb(&m.to_onb(&x), &m.to_onb(&y)));
        assert!((direct - via_frame).norm() < 1e-12);
    }

    #[test]
    fn subspace_validation() {
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(Subspace::new(b).is_err());
        let short = [DVector::from_vec(vec![1.0, 0.0])];
        assert!(matches!(
            Subspace::from_vectors(&short, 3),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
        let m = MetricLieAlgebra::new(
            LieAlgebra::abelian(3).unwrap(),
            DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 1.0, 9.0])),
        )
        .unwrap();
        let s = Subspace::new(DMatrix::from_row_slice(
            3,
            2,
            &[1.0, 1.0, 0.0, 1.0, 0.0, 0.0],
        ))
        .unwrap()
        .orthonormalized(&m)
        .unwrap();
        assert!(s.is_orthonormal());
        assert!(s.orthonormality_defect(&m) < 1e-12);
    }
}
