//! Dense K-way tensors and the three structural operations the estimators
//! build on: vectorization, mode-k matricization, and the k-mode product.
//!
//! Storage is first-index-fastest: element `(i_1, …, i_K)` lives at linear
//! offset `Σ_k i_k · Π_{l<k} m_l` (0-based). Vectorization is therefore a copy
//! of the backing buffer, and matricization follows the usual fiber-to-column
//! convention. Modes are 0-based throughout the public API.

use crate::linalg::Matrix;
use crate::{Error, Result};
use std::io::{Read, Write};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidArgument(
                "tensor needs at least one mode and every dimension positive".into(),
            ));
        }
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "dims {:?} imply {} entries, got {}",
                dims,
                len,
                data.len()
            )));
        }
        Ok(DenseTensor { dims, data })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len: usize = dims.iter().product();
        DenseTensor::new(dims, vec![0.0; len])
    }

    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut t = DenseTensor::zeros(dims)?;
        let mut idx = vec![0usize; t.ndim()];
        for p in 0..t.len() {
            t.data[p] = f(&idx);
            Self::advance(&mut idx, &t.dims);
        }
        Ok(t)
    }

    /// Advances a multi-index in first-index-fastest order.
    fn advance(idx: &mut [usize], dims: &[usize]) {
        for k in 0..dims.len() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                return;
            }
            idx[k] = 0;
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        let mut stride = 1;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.dims[k]);
            off += i * stride;
            stride *= self.dims[k];
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let off = self.offset(idx);
        self.data[off] = v;
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> DenseTensor {
        DenseTensor {
            dims: self.dims.clone(),
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `vec(T)`: the entries in first-index-fastest order.
    pub fn vectorize(&self) -> Vec<f64> {
        self.data.clone()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.ndim() {
            return Err(Error::ModeOutOfRange {
                mode,
                ndim: self.ndim(),
            });
        }
        Ok(())
    }

    /// Mode-`k` matricization: element `(i_1, …, i_K)` maps to row `i_k`,
    /// column `Σ_{l≠k} i_l · Π_{m<l, m≠k} m_m`.
    pub fn matricize(&self, mode: usize) -> Result<Matrix> {
        self.check_mode(mode)?;
        let rows = self.dims[mode];
        let cols = self.len() / rows;
        let mut out = Matrix::zeros(rows, cols);
        let mut idx = vec![0usize; self.ndim()];
        for p in 0..self.len() {
            let mut col = 0;
            let mut stride = 1;
            for (l, &i) in idx.iter().enumerate() {
                if l == mode {
                    continue;
                }
                col += i * stride;
                stride *= self.dims[l];
            }
            out.set(idx[mode], col, self.data[p]);
            Self::advance(&mut idx, &self.dims);
        }
        Ok(out)
    }

    /// Inverse of [`matricize`]: folds an `m_k × (m/m_k)` matrix back into a
    /// tensor with the given dimensions.
    pub fn refold(mat: &Matrix, mode: usize, dims: Vec<usize>) -> Result<DenseTensor> {
        if mode >= dims.len() {
            return Err(Error::ModeOutOfRange {
                mode,
                ndim: dims.len(),
            });
        }
        let len: usize = dims.iter().product();
        if mat.rows() != dims[mode] || mat.rows() * mat.cols() != len {
            return Err(Error::DimensionMismatch(format!(
                "a {}x{} matrix cannot fold into dims {:?} along mode {}",
                mat.rows(),
                mat.cols(),
                dims,
                mode
            )));
        }
        let mut t = DenseTensor::zeros(dims)?;
        let mut idx = vec![0usize; t.ndim()];
        for p in 0..t.len() {
            let mut col = 0;
            let mut stride = 1;
            for (l, &i) in idx.iter().enumerate() {
                if l == mode {
                    continue;
                }
                col += i * stride;
                stride *= t.dims[l];
            }
            t.data[p] = mat.get(idx[mode], col);
            Self::advance(&mut idx, &t.dims);
        }
        Ok(t)
    }

    /// k-mode product `T ×_k A`: contracts mode `k` against the columns of `A`,
    /// so the result has `A.rows()` entries along that mode and
    /// `matricize(result, k) = A · matricize(self, k)`.
    pub fn mode_product(&self, mode: usize, a: &Matrix) -> Result<DenseTensor> {
        self.check_mode(mode)?;
        if a.cols() != self.dims[mode] {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns but mode {} has dimension {}",
                a.cols(),
                mode,
                self.dims[mode]
            )));
        }
        let unfolded = self.matricize(mode)?;
        let product = a.matmul(&unfolded);
        let mut dims = self.dims.clone();
        dims[mode] = a.rows();
        DenseTensor::refold(&product, mode, dims)
    }

    /// `T × {A_1, …, A_K}` applied sequentially; `skip` leaves that mode
    /// untouched (identity behavior).
    pub fn multi_mode_product(&self, mats: &[&Matrix], skip: Option<usize>) -> Result<DenseTensor> {
        if mats.len() != self.ndim() {
            return Err(Error::DimensionMismatch(format!(
                "need one matrix per mode ({}), got {}",
                self.ndim(),
                mats.len()
            )));
        }
        let mut out = self.clone();
        for (k, a) in mats.iter().enumerate() {
            if skip == Some(k) {
                continue;
            }
            out = out.mode_product(k, a)?;
        }
        Ok(out)
    }

    /// Generalized transpose: mode `k` of the result is mode `perm[k]` of the
    /// input.
    pub fn permute(&self, perm: &[usize]) -> Result<DenseTensor> {
        if perm.len() != self.ndim() {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.ndim()];
        for &p in perm {
            if p >= self.ndim() || seen[p] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut t = DenseTensor::zeros(dims)?;
        let mut idx = vec![0usize; t.ndim()];
        let mut src = vec![0usize; t.ndim()];
        for p in 0..t.len() {
            for (k, &pk) in perm.iter().enumerate() {
                src[pk] = idx[k];
            }
            t.data[p] = self.get(&src);
            Self::advance(&mut idx, &t.dims);
        }
        Ok(t)
    }

    /// Binary layout: magic `TNSR`, u32 K, K × u64 dims, then the data vector,
    /// all little-endian with f64 entries.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(b"TNSR")?;
        w.write_all(&(self.ndim() as u32).to_le_bytes())?;
        for &d in &self.dims {
            w.write_all(&(d as u64).to_le_bytes())?;
        }
        for &v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<DenseTensor> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"TNSR" {
            return Err(Error::Parse("bad tensor magic".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let ndim = u32::from_le_bytes(b4) as usize;
        if ndim == 0 || ndim > 64 {
            return Err(Error::Parse(format!("implausible mode count {ndim}")));
        }
        let mut dims = Vec::with_capacity(ndim);
        let mut b8 = [0u8; 8];
        for _ in 0..ndim {
            r.read_exact(&mut b8)?;
            dims.push(u64::from_le_bytes(b8) as usize);
        }
        let len: usize = dims.iter().product();
        let mut data = Vec::with_capacity(len);
        for _ in 0..len {
            r.read_exact(&mut b8)?;
            data.push(f64::from_le_bytes(b8));
        }
        DenseTensor::new(dims, data)
    }

    /// Text layout: dims on the first line, entries whitespace-separated after.
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        writeln!(w, "{}", dims.join(" "))?;
        for &v in &self.data {
            writeln!(w, "{v:?}")?;
        }
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<DenseTensor> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tensor text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        let data: Vec<f64> = lines
            .flat_map(|l| l.split_whitespace())
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        DenseTensor::new(dims, data)
    }
}
