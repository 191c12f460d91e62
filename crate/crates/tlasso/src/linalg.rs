//! Dense matrix algebra for the small symmetric systems this crate works with.
//!
//! Every per-mode covariance or precision matrix stays tiny (the simulation
//! scenarios cap out at 30 per mode), so the routines here are direct dense
//! implementations: Cholesky factorization, cyclic Jacobi eigendecomposition,
//! symmetric square roots, and the Kronecker product.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative floor for the smallest eigenvalue (or squared Cholesky pivot)
/// below which a matrix is reported as not positive definite.
const PD_REL_TOL: f64 = 1e-10;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Norm bundle returned by [`SymMatrix::norms`] / [`norms`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixNorms {
    pub frobenius: f64,
    pub max_abs: f64,
    pub off_diag_l1: f64,
    pub spectral: f64,
}

/// Square symmetric matrix. Symmetry holds exactly: constructors either verify
/// it or symmetrize, and mutation goes through [`SymMatrix::set_sym`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from row-major data, requiring exact symmetry.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = SymMatrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    /// Builds `(A + Aᵀ)/2` from an arbitrary square matrix.
    pub fn symmetrize(a: &Matrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cannot symmetrize a {}x{} matrix",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (a.get(i, j) + a.get(j, i));
                m.set_sym(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets entries `(i, j)` and `(j, i)` to the same value.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `tr(AB)` for symmetric `A`, `B`; equals the entrywise inner product.
    pub fn trace_product(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Lower-triangular Cholesky factor `L` with `L·Lᵀ = self`.
    pub fn cholesky(&self) -> Result<Matrix> {
        let n = self.dim;
        let mut l = Matrix::zeros(n, n);
        let max_diag = (0..n).fold(0.0f64, |m, i| m.max(self.get(i, i).abs()));
        let floor = PD_REL_TOL * max_diag.max(f64::MIN_POSITIVE);
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                let v = l.get(j, k);
                d -= v * v;
            }
            if d <= floor {
                return Err(Error::NotPositiveDefinite);
            }
            let d = d.sqrt();
            l.set(j, j, d);
            for i in (j + 1)..n {
                let mut v = self.get(i, j);
                for k in 0..j {
                    v -= l.get(i, k) * l.get(j, k);
                }
                l.set(i, j, v / d);
            }
        }
        Ok(l)
    }

    /// `log det` of a positive definite matrix, via Cholesky.
    pub fn log_det(&self) -> Result<f64> {
        let l = self.cholesky()?;
        Ok((0..self.dim).map(|i| 2.0 * l.get(i, i).ln()).sum())
    }

    pub fn is_pd(&self) -> bool {
        self.cholesky().is_ok()
    }

    /// Inverse of a positive definite matrix (Cholesky based).
    pub fn inverse(&self) -> Result<SymMatrix> {
        let n = self.dim;
        let l = self.cholesky()?;
        // Invert L in place (forward substitution on the triangular system).
        let mut linv = Matrix::zeros(n, n);
        for i in 0..n {
            linv.set(i, i, 1.0 / l.get(i, i));
            for j in 0..i {
                let mut s = 0.0;
                for k in j..i {
                    s += l.get(i, k) * linv.get(k, j);
                }
                linv.set(i, j, -s / l.get(i, i));
            }
        }
        // A⁻¹ = L⁻ᵀ L⁻¹.
        let mut inv = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in j.max(i)..n {
                    s += linv.get(k, i) * linv.get(k, j);
                }
                inv.set_sym(i, j, s);
            }
        }
        Ok(inv)
    }

    /// Eigenvalues (ascending) and the matching orthonormal eigenvector columns,
    /// computed with cyclic Jacobi rotations. Exact for any symmetric input.
    pub fn sym_eigen(&self) -> (Vec<f64>, Matrix) {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut v = Matrix::identity(n);
        let idx = |i: usize, j: usize| i * n + j;
        let scale = self.frob_norm().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * scale;
        const MAX_SWEEPS: usize = 64;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[idx(p, q)].abs();
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    let apq = a[idx(p, q)];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let app = a[idx(p, p)];
                    let aqq = a[idx(q, q)];
                    let theta = 0.5 * (aqq - app) / apq;
                    let t = if theta.abs() > 1e150 {
                        // Degenerate rotation; tan collapses to 1/(2θ).
                        0.5 / theta
                    } else {
                        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Apply the rotation on both sides.
                    a[idx(p, p)] = app - t * apq;
                    a[idx(q, q)] = aqq + t * apq;
                    a[idx(p, q)] = 0.0;
                    a[idx(q, p)] = 0.0;
                    for r in 0..n {
                        if r != p && r != q {
                            let arp = a[idx(r, p)];
                            let arq = a[idx(r, q)];
                            a[idx(r, p)] = c * arp - s * arq;
                            a[idx(p, r)] = a[idx(r, p)];
                            a[idx(r, q)] = s * arp + c * arq;
                            a[idx(q, r)] = a[idx(r, q)];
                        }
                    }
                    for r in 0..n {
                        let vrp = v.get(r, p);
                        let vrq = v.get(r, q);
                        v.set(r, p, c * vrp - s * vrq);
                        v.set(r, q, s * vrp + c * vrq);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[idx(i, i)].partial_cmp(&a[idx(j, j)]).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[idx(i, i)]).collect();
        let mut vectors = Matrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                vectors.set(r, new_col, v.get(r, old_col));
            }
        }
        (eigenvalues, vectors)
    }

    /// Symmetric positive definite square root, `R·R = self`.
    pub fn sqrt_pd(&self) -> Result<SymMatrix> {
        let (eigenvalues, vectors) = self.sym_eigen();
        let max = eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if eigenvalues[0] <= PD_REL_TOL * max.max(f64::MIN_POSITIVE) {
            return Err(Error::NotPositiveDefinite);
        }
        let n = self.dim;
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += vectors.get(i, k) * eigenvalues[k].sqrt() * vectors.get(j, k);
                }
                out.set_sym(i, j, s);
            }
        }
        Ok(out)
    }

    /// Frobenius, max-abs, off-diagonal ℓ1 and spectral norms.
    pub fn norms(&self) -> MatrixNorms {
        let (eigenvalues, _) = self.sym_eigen();
        let spectral = eigenvalues
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()));
        let mut off = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    off += self.get(i, j).abs();
                }
            }
        }
        MatrixNorms {
            frobenius: self.frob_norm(),
            max_abs: self.max_abs(),
            off_diag_l1: off,
            spectral,
        }
    }
}

/// Kronecker product with the standard block layout:
/// `out[i_a·rows_b + i_b, j_a·cols_b + j_b] = a[i_a, j_a]·b[i_b, j_b]`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let av = a.get(ia, ja);
            if av == 0.0 {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out.set(ia * b.rows() + ib, ja * b.cols() + jb, av * b.get(ib, jb));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_sym(dim: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set_sym(i, j, rng.random_range(-1.0..1.0));
            }
        }
        m
    }

    pub(crate) fn random_pd(dim: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        // AᵀA + I is comfortably positive definite.
        let mut a = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                a.set(i, j, rng.random_range(-1.0..1.0));
            }
        }
        let ata = a.transpose().matmul(&a);
        let mut m = SymMatrix::symmetrize(&ata).unwrap();
        for i in 0..dim {
            let v = m.get(i, i) + 1.0;
            m.set_sym(i, i, v);
        }
        m
    }

    #[test]
    fn cholesky_identity_is_identity() {
        let l = SymMatrix::identity(4).cholesky().unwrap();
        assert_eq!(l, Matrix::identity(4));
    }

    #[test]
    fn cholesky_multiplies_back() {
        let a = SymMatrix::new(2, vec![4.0, 2.0, 2.0, 3.0]).unwrap();
        let l = a.cholesky().unwrap();
        let back = l.matmul(&l.transpose());
        for i in 0..2 {
            for j in 0..2 {
                assert!((back.get(i, j) - a.get(i, j)).abs() < 1e-10 * a.max_abs());
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        // Eigenvalues 3 and -1.
        let a = SymMatrix::new(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(matches!(a.cholesky(), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn inverse_identity_and_diagonal() {
        let inv = SymMatrix::identity(3).inverse().unwrap();
        assert_eq!(inv, SymMatrix::identity(3));
        let inv = SymMatrix::diag(&[2.0, 4.0]).inverse().unwrap();
        assert!((inv.get(0, 0) - 0.5).abs() < 1e-15);
        assert!((inv.get(1, 1) - 0.25).abs() < 1e-15);
        assert_eq!(inv.get(0, 1), 0.0);
    }

    #[test]
    fn inverse_multiplies_back_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_pd(5, &mut rng);
            let inv = a.inverse().unwrap();
            let prod = a.to_matrix().matmul(&inv.to_matrix());
            let err = prod.sub(&Matrix::identity(5)).max_abs();
            assert!(err < 1e-10, "inverse residual {err}");
        }
    }

    #[test]
    fn eigen_diagonal_sorted_ascending() {
        let (vals, _) = SymMatrix::diag(&[1.0, 3.0, 2.0]).sym_eigen();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        let (vals, _) = SymMatrix::identity(4).sym_eigen();
        assert!(vals.iter().all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn eigen_reconstructs_and_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random_sym(6, &mut rng);
            let (vals, v) = a.sym_eigen();
            // A·v_i = λ_i v_i
            let av = a.to_matrix().matmul(&v);
            for k in 0..6 {
                for r in 0..6 {
                    assert!((av.get(r, k) - vals[k] * v.get(r, k)).abs() < 1e-9);
                }
            }
            // VᵀV = I
            let vtv = v.transpose().matmul(&v);
            assert!(vtv.sub(&Matrix::identity(6)).max_abs() < 1e-10);
            // V Λ Vᵀ = A
            let mut rec = Matrix::zeros(6, 6);
            for i in 0..6 {
                for j in 0..6 {
                    let mut s = 0.0;
                    for k in 0..6 {
                        s += v.get(i, k) * vals[k] * v.get(j, k);
                    }
                    rec.set(i, j, s);
                }
            }
            assert!(rec.sub(&a.to_matrix()).max_abs() < 1e-9);
        }
    }

    #[test]
    fn sqrt_pd_squares_back() {
        assert_eq!(
            SymMatrix::identity(3).sqrt_pd().unwrap(),
            SymMatrix::identity(3)
        );
        let r = SymMatrix::diag(&[4.0, 9.0]).sqrt_pd().unwrap();
        assert!((r.get(0, 0) - 2.0).abs() < 1e-12);
        assert!((r.get(1, 1) - 3.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in [4usize, 8, 30] {
            let a = random_pd(dim, &mut rng);
            let r = a.sqrt_pd().unwrap();
            let sq = r.to_matrix().matmul(&r.to_matrix());
            let err = sq.sub(&a.to_matrix()).max_abs();
            assert!(err < 1e-9, "sqrt residual {err} at dim {dim}");
        }
    }

    #[test]
    fn sqrt_pd_rejects_indefinite() {
        let a = SymMatrix::new(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(matches!(a.sqrt_pd(), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn norms_hand_values() {
        let n = SymMatrix::identity(3).norms();
        assert!((n.frobenius - 3.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(n.max_abs, 1.0);
        assert_eq!(n.off_diag_l1, 0.0);
        assert!((n.spectral - 1.0).abs() < 1e-12);

        let a = SymMatrix::new(2, vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let n = a.norms();
        assert!((n.frobenius - 8.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(n.max_abs, 2.0);
        assert_eq!(n.off_diag_l1, 4.0);
        assert!((n.spectral - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_matches_eigen() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a = random_sym(7, &mut rng);
            let (vals, _) = a.sym_eigen();
            let expect = vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            assert!((a.norms().spectral - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn kron_identities() {
        let i6 = kron(&Matrix::identity(2), &Matrix::identity(3));
        assert_eq!(i6, Matrix::identity(6));

        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_sym(3, &mut rng);
        let b = random_sym(3, &mut rng);
        let k = kron(&a.to_matrix(), &b.to_matrix());
        let tr = (0..9).map(|i| k.get(i, i)).sum::<f64>();
        assert!((tr - a.trace() * b.trace()).abs() < 1e-12);
    }

    #[test]
    fn kron_element_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut a = Matrix::zeros(2, 2);
        let mut b = Matrix::zeros(2, 3);
        for i in 0..2 {
            for j in 0..2 {
                a.set(i, j, rng.random_range(-1.0..1.0));
            }
        }
        for i in 0..2 {
            for j in 0..3 {
                b.set(i, j, rng.random_range(-1.0..1.0));
            }
        }
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for s in 0..3 {
                        assert_eq!(k.get(2 * i + r, 3 * j + s), a.get(i, j) * b.get(r, s));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_is_associative() {
        // Same block layout either way; entries differ only by the rounding
        // order of the triple products.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let a = random_sym(2, &mut rng).to_matrix();
        let b = random_sym(3, &mut rng).to_matrix();
        let c = random_sym(2, &mut rng).to_matrix();
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        assert_eq!((left.rows(), left.cols()), (right.rows(), right.cols()));
        assert!(left.sub(&right).max_abs() <= 1e-15);
    }

    #[test]
    fn kron_inverse_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_pd(3, &mut rng);
        let b = random_pd(2, &mut rng);
        let k = SymMatrix::symmetrize(&kron(&a.to_matrix(), &b.to_matrix())).unwrap();
        let lhs = k.inverse().unwrap().to_matrix();
        let rhs = kron(&a.inverse().unwrap().to_matrix(), &b.inverse().unwrap().to_matrix());
        assert!(lhs.sub(&rhs).max_abs() < 1e-8);
    }

    #[test]
    fn symmetrize_checks_shape_and_new_checks_symmetry() {
        assert!(SymMatrix::symmetrize(&Matrix::zeros(2, 3)).is_err());
        assert!(matches!(
            SymMatrix::new(2, vec![1.0, 0.5, 0.25, 1.0]),
            Err(Error::NotSymmetric)
        ));
    }
}
