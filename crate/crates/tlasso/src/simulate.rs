//! Ground-truth generators and the tensor-normal sampler.
//!
//! Two per-mode graph families are provided. "Triangle" builds a covariance
//! `Σ_ij = exp(−|h_i − h_j|/2)` from ordered anchors with Unif(0.5, 1)
//! increments (an AR(1)-like product kernel whose inverse is a chain graph).
//! "Nearest neighbor" wires each of `m_k` random points in the unit square to
//! its four nearest neighbors, gives every selected symmetric pair a value
//! uniform on `[−1, −0.5] ∪ [0.5, 1]`, and shifts the diagonal by
//! `|λ_min| + 0.2` to make the matrix positive definite.
//!
//! Randomness is ChaCha8 keyed by `(seed, stream)`; identical keys reproduce
//! identical truths and samples bit for bit. Draw order is documented on each
//! generator.

use crate::estimator::PrecisionSet;
use crate::linalg::SymMatrix;
use crate::metrics::SupportMatrix;
use crate::tensor::DenseTensor;
use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// Entries of the pre-normalization precision matrix smaller than this times
/// its max-abs entry are treated as structural zeros when supports are built;
/// the chain-graph inverse is exactly sparse in exact arithmetic and this
/// floor only strips numerical residue.
pub const SUPPORT_REL_TOL: f64 = 1e-8;

/// A reproducible random stream: ChaCha8 keyed by seed, with the stream id
/// (usually the replicate index) selecting an independent substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Graph family for the per-mode truths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Triangle,
    NearestNeighbor,
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" | "tri" | "sim1" => Ok(GraphKind::Triangle),
            "nn" | "nearest_neighbor" | "nearest-neighbor" | "sim2" => Ok(GraphKind::NearestNeighbor),
            other => Err(Error::Parse(format!("unknown graph kind '{other}'"))),
        }
    }
}

/// True model for one experiment: normalized precision matrices, their
/// inverses, supports, and per-mode off-diagonal sparsity counts.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub omegas: PrecisionSet,
    pub sigmas: Vec<SymMatrix>,
    pub supports: Vec<SupportMatrix>,
    pub sparsity: Vec<usize>,
}

/// Triangle-graph covariance/precision pair for one mode.
///
/// Draw order: `m_k − 1` increment draws, each Unif(0.5, 1), anchored at
/// `h_1 = 0`.
pub fn gen_triangle(dim: usize, rng: &mut ChaCha8Rng) -> Result<(SymMatrix, SymMatrix)> {
    if dim < 2 {
        return Err(Error::InvalidArgument(
            "triangle graph needs dimension at least 2".into(),
        ));
    }
    let mut h = vec![0.0f64; dim];
    for i in 1..dim {
        h[i] = h[i - 1] + rng.random_range(0.5..1.0);
    }
    let mut sigma = SymMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            sigma.set_sym(i, j, (-(h[j] - h[i]).abs() / 2.0).exp());
        }
    }
    let omega = sigma.inverse()?;
    Ok((sigma, omega))
}

/// Four-nearest-neighbor precision matrix for one mode. A pair enters the
/// graph when the two points are four-nearest neighbors of each other.
///
/// Draw order: `m_k` points as (x, y) pairs Unif(0, 1)²; then one value per
/// selected unordered pair in ascending `(i, j)` order, drawn as a sign draw
/// (`u < 0.5` gives negative) followed by a magnitude draw Unif(0.5, 1).
/// Distance ties break toward the lower index.
pub fn gen_nearest_neighbor(dim: usize, rng: &mut ChaCha8Rng) -> Result<(SymMatrix, SymMatrix)> {
    if dim < 5 {
        return Err(Error::InvalidArgument(
            "four-nearest-neighbor graph needs dimension at least 5".into(),
        ));
    }
    let points: Vec<(f64, f64)> = (0..dim)
        .map(|_| {
            let x = rng.random_range(0.0..1.0);
            let y = rng.random_range(0.0..1.0);
            (x, y)
        })
        .collect();
    let edges = four_nearest_edges(&points);

    let mut omega = SymMatrix::zeros(dim);
    for &(i, j) in &edges {
        let sign = if rng.random_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 };
        let magnitude = rng.random_range(0.5..1.0);
        omega.set_sym(i, j, sign * magnitude);
    }
    let (eigenvalues, _) = omega.sym_eigen();
    let shift = eigenvalues[0].abs() + 0.2;
    for i in 0..dim {
        let v = omega.get(i, i) + shift;
        omega.set_sym(i, i, v);
    }
    let sigma = omega.inverse()?;
    Ok((sigma, omega))
}

/// Unordered pairs of points that are four-nearest neighbors of each other,
/// in ascending order. Ties in distance break toward the lower index.
pub(crate) fn four_nearest_edges(points: &[(f64, f64)]) -> Vec<(usize, usize)> {
    let dim = points.len();
    let mut chosen: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); dim];
    for i in 0..dim {
        let mut others: Vec<(f64, usize)> = (0..dim)
            .filter(|&j| j != i)
            .map(|j| {
                let dx = points[i].0 - points[j].0;
                let dy = points[i].1 - points[j].1;
                (dx * dx + dy * dy, j)
            })
            .collect();
        others.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &(_, j) in others.iter().take(4) {
            chosen[i].insert(j);
        }
    }
    let mut set = std::collections::BTreeSet::new();
    for i in 0..dim {
        for &j in &chosen[i] {
            if chosen[j].contains(&i) {
                set.insert((i.min(j), i.max(j)));
            }
        }
    }
    set.into_iter().collect()
}

/// Generates one truth per mode, normalizes each precision matrix to unit
/// Frobenius norm, and records supports from the pre-normalization matrices
/// (normalization cannot change a zero pattern).
pub fn make_truth(kind: GraphKind, dims: &[usize], rng: &mut ChaCha8Rng) -> Result<GroundTruth> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument("need at least one mode".into()));
    }
    let mut omegas = Vec::with_capacity(dims.len());
    let mut sigmas = Vec::with_capacity(dims.len());
    let mut supports = Vec::with_capacity(dims.len());
    let mut sparsity = Vec::with_capacity(dims.len());
    for &d in dims {
        let (sigma, omega) = match kind {
            GraphKind::Triangle => gen_triangle(d, rng)?,
            GraphKind::NearestNeighbor => gen_nearest_neighbor(d, rng)?,
        };
        let support = SupportMatrix::from_sym(&omega, SUPPORT_REL_TOL);
        sparsity.push(support.count() - d);
        let norm = omega.frob_norm();
        omegas.push(omega.scale(1.0 / norm));
        sigmas.push(sigma.scale(norm));
        supports.push(support);
    }
    Ok(GroundTruth {
        omegas: PrecisionSet::from_mats(omegas),
        sigmas,
        supports,
        sparsity,
    })
}

/// Draws `n` i.i.d. samples `T = Z × {Σ_1^{1/2}, …, Σ_K^{1/2}}` with `Z` filled
/// by standard normal draws in linear (first-index-fastest) order.
pub fn sample_tensor_normal(
    truth: &GroundTruth,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DenseTensor>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let dims = truth.omegas.dims();
    let roots: Vec<crate::linalg::Matrix> = truth
        .sigmas
        .iter()
        .map(|s| s.sqrt_pd().map(|r| r.to_matrix()))
        .collect::<Result<_>>()?;
    let root_refs: Vec<&crate::linalg::Matrix> = roots.iter().collect();
    let len: usize = dims.iter().product();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let data: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let z = DenseTensor::new(dims.clone(), data)?;
        out.push(z.multi_mode_product(&root_refs, None)?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct TruthExport<'a> {
    dims: Vec<usize>,
    sparsity: &'a [usize],
    supports: Vec<Vec<(usize, usize)>>,
    omegas: Vec<&'a [f64]>,
    sigmas: Vec<&'a [f64]>,
}

impl GroundTruth {
    pub fn dims(&self) -> Vec<usize> {
        self.omegas.dims()
    }

    /// JSON export: dims, per-mode support pair lists, and the row-major
    /// normalized precision/covariance matrices.
    pub fn to_json(&self) -> String {
        let export = TruthExport {
            dims: self.dims(),
            sparsity: &self.sparsity,
            supports: self.supports.iter().map(|s| s.upper_pairs()).collect(),
            omegas: self.omegas.mats().iter().map(|m| m.data()).collect(),
            sigmas: self.sigmas.iter().map(|m| m.data()).collect(),
        };
        serde_json::to_string_pretty(&export).expect("truth export cannot fail")
    }
}
