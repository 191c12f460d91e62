//! Estimation-error and selection-quality criteria.
//!
//! The Kronecker-product Frobenius error and the Kronecker-level TPR/TNR are
//! computed factor-wise, never materializing the `m × m` product: the error
//! uses `‖⊗A_k − ⊗B_k‖_F² = Π‖A_k‖² + Π‖B_k‖² − 2Π tr(A_k B_k)`, and a product
//! entry is nonzero exactly when every factor entry is.

use crate::estimator::PrecisionSet;
use crate::linalg::SymMatrix;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Symmetric boolean matrix holding a support or rejection pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportMatrix {
    dim: usize,
    data: Vec<bool>,
}

impl SupportMatrix {
    pub fn new(dim: usize) -> Self {
        SupportMatrix {
            dim,
            data: vec![false; dim * dim],
        }
    }

    /// Support of a symmetric matrix with entries below
    /// `rel_tol · max|entry|` treated as zero. `rel_tol = 0` keeps exact
    /// nonzeros only.
    pub fn from_sym(a: &SymMatrix, rel_tol: f64) -> Self {
        let cutoff = rel_tol * a.max_abs();
        let mut s = SupportMatrix::new(a.dim());
        for i in 0..a.dim() {
            for j in i..a.dim() {
                if a.get(i, j).abs() > cutoff || (cutoff == 0.0 && a.get(i, j) != 0.0) {
                    s.set_sym(i, j, true);
                }
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    /// Entries set to true (ordered count over the full matrix).
    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// True off-diagonal entries (ordered count, i.e. twice the pair count).
    pub fn offdiag_count(&self) -> usize {
        let mut c = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && self.get(i, j) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Index pairs `(i, j)` with `i < j` that are set.
    pub fn upper_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Bundle of the criteria tracked per replicate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvalResult {
    pub kron_frob_err: f64,
    pub avg_frob_err: f64,
    pub avg_max_err: f64,
    pub tpr: f64,
    pub tnr: f64,
    pub fdp: f64,
    pub power: f64,
}

fn check_same_dims(est: &PrecisionSet, truth: &PrecisionSet) -> Result<()> {
    if est.dims() != truth.dims() {
        return Err(Error::DimensionMismatch(format!(
            "estimate dims {:?} vs truth dims {:?}",
            est.dims(),
            truth.dims()
        )));
    }
    Ok(())
}

/// `(1/m)·‖Ω̂_1 ⊗ ⋯ ⊗ Ω̂_K − Ω*_1 ⊗ ⋯ ⊗ Ω*_K‖_F`, computed factor-wise.
pub fn kron_error(est: &PrecisionSet, truth: &PrecisionSet) -> Result<f64> {
    check_same_dims(est, truth)?;
    let mut prod_est = 1.0;
    let mut prod_truth = 1.0;
    let mut prod_cross = 1.0;
    for (a, b) in est.mats().iter().zip(truth.mats()) {
        let na = a.frob_norm();
        let nb = b.frob_norm();
        prod_est *= na * na;
        prod_truth *= nb * nb;
        prod_cross *= a.trace_product(b);
    }
    let m: usize = est.dims().iter().product();
    let sq = (prod_est + prod_truth - 2.0 * prod_cross).max(0.0);
    Ok(sq.sqrt() / m as f64)
}

/// Same criterion for a dense `m × m` estimate against a factored truth. The
/// truth product entry at vectorization indices `(r, c)` multiplies the factor
/// entries of the mode digits of `r` and `c` (first index fastest).
pub fn kron_error_dense(est: &SymMatrix, truth: &PrecisionSet) -> Result<f64> {
    let dims = truth.dims();
    let m: usize = dims.iter().product();
    if est.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "estimate is {}x{} but truth product is {m}x{m}",
            est.dim(),
            est.dim()
        )));
    }
    let mut sq = 0.0;
    let mut r_digits = vec![0usize; dims.len()];
    for r in 0..m {
        let mut c_digits = vec![0usize; dims.len()];
        for c in 0..m {
            let mut t = 1.0;
            for k in 0..dims.len() {
                t *= truth.mat(k).get(r_digits[k], c_digits[k]);
            }
            let d = est.get(r, c) - t;
            sq += d * d;
            advance(&mut c_digits, &dims);
        }
        advance(&mut r_digits, &dims);
    }
    Ok(sq.sqrt() / m as f64)
}

fn advance(digits: &mut [usize], dims: &[usize]) {
    for k in 0..dims.len() {
        digits[k] += 1;
        if digits[k] < dims[k] {
            return;
        }
        digits[k] = 0;
    }
}

/// Averaged per-mode errors `(1/K)Σ‖Ω̂_k − Ω*_k‖_F` and `(1/K)Σ‖Ω̂_k − Ω*_k‖_max`.
pub fn mode_errors(est: &PrecisionSet, truth: &PrecisionSet) -> Result<(f64, f64)> {
    check_same_dims(est, truth)?;
    let k = est.ndim() as f64;
    let mut frob = 0.0;
    let mut max = 0.0;
    for (a, b) in est.mats().iter().zip(truth.mats()) {
        let d = a.sub(b);
        frob += d.frob_norm();
        max += d.max_abs();
    }
    Ok((frob / k, max / k))
}

fn factor_counts(est: &[SupportMatrix], truth: &[SupportMatrix]) -> Result<(f64, f64, f64, f64)> {
    if est.len() != truth.len() {
        return Err(Error::DimensionMismatch(
            "factor count mismatch between estimate and truth".into(),
        ));
    }
    let mut nz_est = 1.0f64;
    let mut nz_truth = 1.0f64;
    let mut nz_both = 1.0f64;
    let mut total = 1.0f64;
    for (e, t) in est.iter().zip(truth) {
        if e.dim() != t.dim() {
            return Err(Error::DimensionMismatch(
                "factor dimension mismatch between estimate and truth".into(),
            ));
        }
        let d = e.dim();
        let mut ce = 0usize;
        let mut ct = 0usize;
        let mut cb = 0usize;
        for i in 0..d {
            for j in 0..d {
                let a = e.get(i, j);
                let b = t.get(i, j);
                ce += usize::from(a);
                ct += usize::from(b);
                cb += usize::from(a && b);
            }
        }
        nz_est *= ce as f64;
        nz_truth *= ct as f64;
        nz_both *= cb as f64;
        total *= (d * d) as f64;
    }
    Ok((nz_est, nz_truth, nz_both, total))
}

/// TPR and TNR of the Kronecker-product support, computed structurally from
/// the per-mode supports (a product entry is nonzero iff every factor entry
/// is).
pub fn selection_rates(est: &[SupportMatrix], truth: &[SupportMatrix]) -> Result<(f64, f64)> {
    let (nz_est, nz_truth, nz_both, total) = factor_counts(est, truth)?;
    if nz_truth == 0.0 || nz_truth == total {
        return Err(Error::Degenerate(
            "truth support is all-zero or all-nonzero; rates undefined".into(),
        ));
    }
    let tpr = nz_both / nz_truth;
    let tn = total - nz_est - nz_truth + nz_both;
    let tnr = tn / (total - nz_truth);
    Ok((tpr, tnr))
}

/// TPR/TNR of a dense `m × m` estimated support against the factored truth.
pub fn selection_rates_dense(
    est: &SupportMatrix,
    truth: &[SupportMatrix],
) -> Result<(f64, f64)> {
    let dims: Vec<usize> = truth.iter().map(|t| t.dim()).collect();
    let m: usize = dims.iter().product();
    if est.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "estimated support is {}x{}, truth product is {m}x{m}",
            est.dim(),
            est.dim()
        )));
    }
    let mut tp = 0usize;
    let mut tn = 0usize;
    let mut nz_truth = 0usize;
    let mut r_digits = vec![0usize; dims.len()];
    for r in 0..m {
        let mut c_digits = vec![0usize; dims.len()];
        for c in 0..m {
            let truth_nz = (0..dims.len()).all(|k| truth[k].get(r_digits[k], c_digits[k]));
            let est_nz = est.get(r, c);
            if truth_nz {
                nz_truth += 1;
                tp += usize::from(est_nz);
            } else {
                tn += usize::from(!est_nz);
            }
            advance(&mut c_digits, &dims);
        }
        advance(&mut r_digits, &dims);
    }
    if nz_truth == 0 || nz_truth == m * m {
        return Err(Error::Degenerate(
            "truth support is all-zero or all-nonzero; rates undefined".into(),
        ));
    }
    Ok((
        tp as f64 / nz_truth as f64,
        tn as f64 / (m * m - nz_truth) as f64,
    ))
}

/// FDP and power of a rejection pattern for one mode over the `i < j` pairs:
/// FDP counts rejected true nulls over rejections (floored at one), power the
/// fraction of true alternatives rejected.
pub fn fdp_power(rejected: &SupportMatrix, truth: &SupportMatrix) -> Result<(f64, f64)> {
    if rejected.dim() != truth.dim() {
        return Err(Error::DimensionMismatch(
            "rejection and truth dimensions differ".into(),
        ));
    }
    let d = truth.dim();
    let mut rejections = 0usize;
    let mut false_rejections = 0usize;
    let mut alternatives = 0usize;
    let mut detected = 0usize;
    for i in 0..d {
        for j in (i + 1)..d {
            let r = rejected.get(i, j);
            let alt = truth.get(i, j);
            rejections += usize::from(r);
            false_rejections += usize::from(r && !alt);
            alternatives += usize::from(alt);
            detected += usize::from(r && alt);
        }
    }
    let fdp = false_rejections as f64 / rejections.max(1) as f64;
    let power = if alternatives == 0 {
        1.0
    } else {
        detected as f64 / alternatives as f64
    };
    Ok((fdp, power))
}
