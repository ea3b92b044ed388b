//! Functions on a quadrature grid, their Fourier coefficients on the
//! truncated dual, and the transforms between them.
//!
//! Conventions: `F f(ξ) = ∫ f(x) ξ(x) dx` and
//! `f(x) = Σ_ξ d_ξ Tr[ξ(x)* F f(ξ)]`. Vector-valued functions take values
//! in `C^m`; their coefficient blocks are stored slice-major, `m` matrices
//! of size `d_ξ × d_ξ` one after another.

mod ops;
mod transform;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{dual_position, enumerate_dual, DualIndex, DualLabel, GroupElement, GroupKind, QuadratureGrid};
use crate::linalg::{adjoint, hs_distance, hs_norm, matmul};

pub use ops::{
    conv_theorem_defect, convolve, convolve_by_quadrature, discarded_tail_mass, involution,
    parseval_defect,
};
pub use transform::{evaluate, forward, inverse, inverse_on};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Samples of `f: G → C^m` at the nodes of a quadrature grid, node-major.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<QuadratureGrid>,
    value_dim: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Arc<QuadratureGrid>, value_dim: usize, values: Vec<Complex64>) -> Result<Self> {
        if value_dim == 0 {
            return Err(Error::Domain("value dimension must be at least 1".into()));
        }
        let expected = grid.len() * value_dim;
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        Ok(GridFunction { grid, value_dim, values })
    }

    pub fn zeros(grid: Arc<QuadratureGrid>, value_dim: usize) -> Self {
        let n = grid.len() * value_dim;
        GridFunction { grid, value_dim, values: vec![ZERO; n] }
    }

    pub fn constant(grid: Arc<QuadratureGrid>, value: &[Complex64]) -> Self {
        let values = (0..grid.len()).flat_map(|_| value.iter().copied()).collect();
        GridFunction { grid, value_dim: value.len(), values }
    }

    /// Samples `f`, which must return exactly `value_dim` components.
    pub fn from_fn(
        grid: Arc<QuadratureGrid>,
        value_dim: usize,
        f: impl Fn(&GroupElement) -> Vec<Complex64>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len() * value_dim);
        for x in &grid.nodes {
            let v = f(x);
            if v.len() != value_dim {
                return Err(Error::DimensionMismatch { expected: value_dim, found: v.len() });
            }
            values.extend(v);
        }
        GridFunction::new(grid, value_dim, values)
    }

    pub fn from_scalar_fn(grid: Arc<QuadratureGrid>, f: impl Fn(&GroupElement) -> Complex64) -> Self {
        let values = grid.nodes.iter().map(f).collect();
        GridFunction { grid, value_dim: 1, values }
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn kind(&self) -> GroupKind {
        self.grid.kind
    }

    pub fn bandlimit(&self) -> usize {
        self.grid.bandlimit
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// The `C^m` value at node `i`.
    pub fn value(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.value_dim..(i + 1) * self.value_dim]
    }

    /// Component `c` as a scalar function.
    pub fn component(&self, c: usize) -> GridFunction {
        let values = self.values.iter().skip(c).step_by(self.value_dim).copied().collect();
        GridFunction { grid: self.grid.clone(), value_dim: 1, values }
    }

    /// `sup_x max_c |f_c(x)|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `∫ |f_c|²` for each component.
    pub fn l2_norms_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.value_dim];
        for (i, w) in self.grid.weights.iter().enumerate() {
            for (c, acc) in out.iter_mut().enumerate() {
                *acc += w * self.values[i * self.value_dim + c].norm_sqr();
            }
        }
        out
    }

    /// Quadrature inner product `Σ_c ∫ f_c conj(g_c)`.
    pub fn inner(&self, other: &GridFunction) -> Result<Complex64> {
        self.check_compatible(other)?;
        let m = self.value_dim;
        Ok(self
            .grid
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                (0..m).map(|c| self.values[i * m + c] * other.values[i * m + c].conj()).sum::<Complex64>() * *w
            })
            .sum())
    }

    /// `∫ f`.
    pub fn integral(&self) -> Vec<Complex64> {
        let m = self.value_dim;
        let mut out = vec![ZERO; m];
        for (i, w) in self.grid.weights.iter().enumerate() {
            for (c, acc) in out.iter_mut().enumerate() {
                *acc += self.values[i * m + c] * *w;
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        self.map(|z| z * c)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> GridFunction {
        GridFunction {
            grid: self.grid.clone(),
            value_dim: self.value_dim,
            values: self.values.iter().map(|z| f(*z)).collect(),
        }
    }

    /// `a · self + b · other`.
    pub fn combine(&self, a: Complex64, other: &GridFunction, b: Complex64) -> Result<GridFunction> {
        self.check_compatible(other)?;
        Ok(GridFunction {
            grid: self.grid.clone(),
            value_dim: self.value_dim,
            values: self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect(),
        })
    }

    pub(crate) fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid)
            || (self.grid.kind == other.grid.kind && self.grid.bandlimit == other.grid.bandlimit)
        {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "functions live on different grids ({} L={} vs {} L={})",
                self.grid.kind, self.grid.bandlimit, other.grid.kind, other.grid.bandlimit
            )))
        }
    }

    fn check_compatible(&self, other: &GridFunction) -> Result<()> {
        self.check_same_grid(other)?;
        if self.value_dim != other.value_dim {
            return Err(Error::DimensionMismatch { expected: self.value_dim, found: other.value_dim });
        }
        Ok(())
    }
}

/// A truncated family `(T_ξ)` of `C^m ⊗ End(H_ξ)` blocks, one per element
/// of [`enumerate_dual`] at the band limit.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    kind: GroupKind,
    bandlimit: usize,
    value_dim: usize,
    dual: Vec<DualIndex>,
    blocks: Vec<Vec<Complex64>>,
}

/// Hilbert-Schmidt norms per dual index, maximized over the `C^m` slices.
#[derive(Debug, Clone, PartialEq)]
pub struct HsNormTable {
    pub entries: Vec<(DualIndex, f64)>,
}

impl FourierCoefficients {
    pub fn zeros(kind: GroupKind, bandlimit: usize, value_dim: usize) -> Self {
        let dual = enumerate_dual(kind, bandlimit);
        let blocks = dual.iter().map(|xi| vec![ZERO; value_dim * xi.dim * xi.dim]).collect();
        FourierCoefficients { kind, bandlimit, value_dim, dual, blocks }
    }

    /// Builds every block from `f(ξ)`, which must return `m · d_ξ²` entries.
    pub fn from_fn(
        kind: GroupKind,
        bandlimit: usize,
        value_dim: usize,
        f: impl Fn(&DualIndex) -> Vec<Complex64>,
    ) -> Result<Self> {
        let dual = enumerate_dual(kind, bandlimit);
        let mut blocks = Vec::with_capacity(dual.len());
        for xi in &dual {
            let b = f(xi);
            let expected = value_dim * xi.dim * xi.dim;
            if b.len() != expected {
                return Err(Error::DimensionMismatch { expected, found: b.len() });
            }
            blocks.push(b);
        }
        Ok(FourierCoefficients { kind, bandlimit, value_dim, dual, blocks })
    }

    /// Scalar coefficients `T_ξ = c(ξ) Id`.
    pub fn scalar_multiple_of_identity(kind: GroupKind, bandlimit: usize, c: impl Fn(&DualIndex) -> f64) -> Self {
        let dual = enumerate_dual(kind, bandlimit);
        let blocks = dual
            .iter()
            .map(|xi| {
                let mut b = vec![ZERO; xi.dim * xi.dim];
                let v = Complex64::new(c(xi), 0.0);
                for i in 0..xi.dim {
                    b[i * xi.dim + i] = v;
                }
                b
            })
            .collect();
        FourierCoefficients { kind, bandlimit, value_dim: 1, dual, blocks }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn bandlimit(&self) -> usize {
        self.bandlimit
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn dual(&self) -> &[DualIndex] {
        &self.dual
    }

    pub fn blocks(&self) -> &[Vec<Complex64>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[Complex64] {
        &self.blocks[i]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.blocks[i]
    }

    /// The `c`-th `d_ξ × d_ξ` slice of block `i`.
    pub fn slice(&self, i: usize, c: usize) -> &[Complex64] {
        let d2 = self.dual[i].dim * self.dual[i].dim;
        &self.blocks[i][c * d2..(c + 1) * d2]
    }

    pub fn position(&self, label: DualLabel) -> Option<usize> {
        dual_position(self.kind, self.bandlimit, label)
    }

    pub fn block_for(&self, label: DualLabel) -> Option<&[Complex64]> {
        self.position(label).map(|i| self.blocks[i].as_slice())
    }

    /// `max_c ‖T_ξ^c‖_HS` for each `ξ`, aligned with [`Self::dual`].
    pub fn hs_norms(&self) -> Vec<f64> {
        (0..self.dual.len())
            .map(|i| (0..self.value_dim).map(|c| hs_norm(self.slice(i, c))).fold(0.0, f64::max))
            .collect()
    }

    pub fn hs_norm_table(&self) -> HsNormTable {
        HsNormTable { entries: self.dual.iter().copied().zip(self.hs_norms()).collect() }
    }

    /// `Σ_ξ d_ξ ‖T_ξ^c‖²_HS` for each slice `c`.
    pub fn plancherel_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.value_dim];
        for (i, xi) in self.dual.iter().enumerate() {
            for (c, acc) in out.iter_mut().enumerate() {
                *acc += xi.dim as f64 * self.slice(i, c).iter().map(|z| z.norm_sqr()).sum::<f64>();
            }
        }
        out
    }

    /// New coefficients `g(ξ, T_ξ)`; block sizes must be preserved.
    pub fn map_blocks(&self, g: impl Fn(&DualIndex, &[Complex64]) -> Vec<Complex64>) -> Self {
        let blocks: Vec<Vec<Complex64>> = self
            .dual
            .iter()
            .zip(&self.blocks)
            .map(|(xi, b)| {
                let nb = g(xi, b);
                assert_eq!(nb.len(), b.len(), "map_blocks must preserve block size");
                nb
            })
            .collect();
        FourierCoefficients { blocks, ..self.clone() }
    }

    /// Multiplies each block by the real scalar `c(ξ)`.
    pub fn scale_by(&self, c: impl Fn(&DualIndex) -> f64) -> Self {
        self.map_blocks(|xi, b| {
            let s = c(xi);
            b.iter().map(|z| z * s).collect()
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_blocks(|_, b| b.iter().map(|z| z * c).collect())
    }

    /// `a · self + b · other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.check_shape(other)?;
        let blocks =
            self.blocks.iter().zip(&other.blocks).map(|(x, y)| x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()).collect();
        Ok(FourierCoefficients { blocks, ..self.clone() })
    }

    /// `A ∘ self`: the scalar family `a` composed from the left with every
    /// `C^m` slice.
    pub fn compose_left(&self, a: &FourierCoefficients) -> Result<Self> {
        if a.value_dim != 1 {
            return Err(Error::Unsupported("left factor of a composition must be scalar".into()));
        }
        if a.kind != self.kind || a.bandlimit != self.bandlimit {
            return Err(Error::Precondition("composition of coefficient families with different duals".into()));
        }
        let m = self.value_dim;
        let blocks = self
            .dual
            .iter()
            .enumerate()
            .map(|(i, xi)| {
                let d = xi.dim;
                (0..m).flat_map(|c| matmul(&a.blocks[i], self.slice(i, c), d)).collect()
            })
            .collect();
        Ok(FourierCoefficients { blocks, ..self.clone() })
    }

    /// Slice-wise Hermitian adjoint.
    pub fn adjoint(&self) -> Self {
        let m = self.value_dim;
        self.map_blocks(|xi, b| {
            let d2 = xi.dim * xi.dim;
            (0..m).flat_map(|c| adjoint(&b[c * d2..(c + 1) * d2], xi.dim)).collect()
        })
    }

    /// `max_{ξ, c} ‖T_ξ^c - S_ξ^c‖_HS`.
    pub fn max_hs_distance(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        let m = self.value_dim;
        let mut best: f64 = 0.0;
        for i in 0..self.dual.len() {
            for c in 0..m {
                best = best.max(hs_distance(self.slice(i, c), other.slice(i, c)));
            }
        }
        Ok(best)
    }

    /// The same family seen at a smaller band limit.
    pub fn truncate(&self, bandlimit: usize) -> Self {
        let bl = bandlimit.min(self.bandlimit);
        let dual = enumerate_dual(self.kind, bl);
        let blocks = dual
            .iter()
            .map(|xi| self.block_for(xi.label).map(|b| b.to_vec()).unwrap_or_default())
            .collect();
        FourierCoefficients { kind: self.kind, bandlimit: bl, value_dim: self.value_dim, dual, blocks }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.bandlimit != other.bandlimit {
            return Err(Error::Precondition("coefficient families over different duals".into()));
        }
        if self.value_dim != other.value_dim {
            return Err(Error::DimensionMismatch { expected: self.value_dim, found: other.value_dim });
        }
        Ok(())
    }
}
