use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::qlinalg::{
    determinant, kernel_basis, rational_sqrt, rationalize, solve, Rational, Scalar, SparseMat,
};

/// Relative tolerance for float-mode kernels, solves and comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

/// The linear algebra the operator code needs, exact over the rationals or
/// approximate in double precision.
pub trait Field: Scalar {
    /// Basis of the right kernel.
    fn kernel(m: &SparseMat<Self>) -> Vec<Vec<Self>>;

    /// Some solution of `m x = b`, or `None` if inconsistent.
    fn solve(m: &SparseMat<Self>, b: &[Self]) -> Option<Vec<Self>>;

    /// Whether `x` vanishes relative to `scale`.
    fn negligible(x: &Self, scale: f64) -> bool;

    /// Symmetric positive definite square root of a symmetric positive definite matrix.
    fn psd_sqrt(m: &SparseMat<Self>) -> Option<SparseMat<Self>>;
}

impl Field for Rational {
    fn kernel(m: &SparseMat<Self>) -> Vec<Vec<Self>> {
        let k = kernel_basis(m);
        (0..k.ncols()).map(|j| k.column(j)).collect()
    }

    fn solve(m: &SparseMat<Self>, b: &[Self]) -> Option<Vec<Self>> {
        solve(m, b)
    }

    fn negligible(x: &Self, _scale: f64) -> bool {
        num_traits::Zero::is_zero(x)
    }

    /// Diagonal input is handled entrywise; otherwise the float root is
    /// rounded to nearby fractions and accepted only if it squares back exactly.
    fn psd_sqrt(m: &SparseMat<Self>) -> Option<SparseMat<Self>> {
        let n = m.nrows();
        let diagonal = m.entries().all(|(i, j, _)| i == j);
        let s = if diagonal {
            let mut s = SparseMat::zeros(n, n);
            for i in 0..n {
                let r = rational_sqrt(&m.get(i, i))?;
                s.set(i, i, r);
            }
            s
        } else {
            let f = f64::psd_sqrt(&m.to_f64())?;
            let mut s = SparseMat::zeros(n, n);
            for (i, j, v) in f.entries() {
                s.set(i, j, rationalize(*v, 1_000_000)?);
            }
            s
        };
        if s.transpose() != s || &s.mul(&s) != m {
            return None;
        }
        // Sylvester: all leading minors positive.
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            let minor = determinant(&s.select(&idx, &idx)).ok()?;
            if minor <= Rational::from_i64(0) {
                return None;
            }
        }
        Some(s)
    }
}

pub(crate) fn to_dense(m: &SparseMat<f64>) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(m.nrows(), m.ncols());
    for (i, j, v) in m.entries() {
        d[(i, j)] = *v;
    }
    d
}

pub(crate) fn from_dense(d: &DMatrix<f64>) -> SparseMat<f64> {
    SparseMat::from_triplets(
        d.nrows(),
        d.ncols(),
        (0..d.nrows()).flat_map(|i| (0..d.ncols()).map(move |j| (i, j, d[(i, j)]))),
    )
}

impl Field for f64 {
    fn kernel(m: &SparseMat<Self>) -> Vec<Vec<Self>> {
        let (rows, cols) = m.shape();
        if cols == 0 {
            return Vec::new();
        }
        // Pad to square so the SVD returns a full right basis.
        let n = rows.max(cols);
        let mut d = DMatrix::zeros(n, cols);
        for (i, j, v) in m.entries() {
            d[(i, j)] = *v;
        }
        let svd = d.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let top = svd.singular_values.max();
        let tol = FLOAT_TOL * top.max(1.0);
        (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] <= tol)
            .map(|i| v_t.row(i).iter().copied().collect())
            .collect()
    }

    fn solve(m: &SparseMat<Self>, b: &[Self]) -> Option<Vec<Self>> {
        let d = to_dense(m);
        let scale = d.amax().max(1.0);
        let svd = d.clone().svd(true, true);
        let rhs = DVector::from_column_slice(b);
        let x = svd.solve(&rhs, FLOAT_TOL * scale).ok()?;
        let residual = (&d * &x - &rhs).amax();
        if residual > FLOAT_TOL * scale * rhs.amax().max(1.0) {
            return None;
        }
        Some(x.iter().copied().collect())
    }

    fn negligible(x: &Self, scale: f64) -> bool {
        x.abs() <= FLOAT_TOL * scale.max(1.0)
    }

    fn psd_sqrt(m: &SparseMat<Self>) -> Option<SparseMat<Self>> {
        let eig = SymmetricEigen::new(to_dense(m));
        if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
            return None;
        }
        let root = eig.eigenvalues.map(f64::sqrt);
        let s = &eig.eigenvectors * DMatrix::from_diagonal(&root) * eig.eigenvectors.transpose();
        let s = (&s + s.transpose()) * 0.5;
        Some(from_dense(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::int_matrix;
    use crate::qlinalg::int;

    #[test]
    fn rational_roots() {
        let d = int_matrix(2, 2, &[4, 0, 0, 9]);
        assert_eq!(
            Rational::psd_sqrt(&d).unwrap(),
            int_matrix(2, 2, &[2, 0, 0, 3])
        );
        let s = int_matrix(2, 2, &[2, 1, 1, 3]);
        assert_eq!(Rational::psd_sqrt(&s.mul(&s)).unwrap(), s);
        assert!(Rational::psd_sqrt(&int_matrix(2, 2, &[2, 0, 0, 1])).is_none());
        assert!(Rational::psd_sqrt(&int_matrix(2, 2, &[2, 1, 1, 1])).is_none());
    }

    #[test]
    fn float_kernel_and_solve() {
        let m = int_matrix(2, 3, &[1, 1, 0, 0, 0, 1]).to_f64();
        let k = f64::kernel(&m);
        assert_eq!(k.len(), 1);
        assert!((k[0][0] + k[0][1]).abs() < 1e-12 && k[0][2].abs() < 1e-12);
        let sq = int_matrix(2, 2, &[2, 0, 0, 0]).to_f64();
        assert!(f64::solve(&sq, &[1.0, 1.0]).is_none());
        assert_eq!(
            Rational::solve(&int_matrix(1, 1, &[2]), &[int(1)]).unwrap()[0],
            Rational::new(1.into(), 2.into())
        );
    }
}
