//! Factorization with a compactly supported factor on the circle.
//!
//! A bump partition `{χ_j}` subordinate to `k` translates of
//! `W = (-δ/2, δ/2)` splits the kernel `K = F^{-1}(e^{-ω/(2h')} Id)` as
//! `K = Σ ψ_j`, `ψ_j = χ_j K`. Then `g = Σ ψ_j^* ∗ ψ_j` is supported in
//! `W·W ⊆ V = (-δ, δ)` and `S_ξ = F g(ξ) = Σ F ψ_j(ξ)† F ψ_j(ξ)` satisfies
//! `S_ξ ≥ e^{-ω/h'}/k` by Cauchy–Schwarz, so `S_ξ` is invertible.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{forward, inverse_on, FourierCoefficients, GridFunction};
use crate::group::{GroupElement, GroupKind, QuadratureGrid};
use crate::linalg::{adjoint, hermitian_eigenvalues, inverse, matmul};
use crate::weights::WeightFunction;

use super::{convolution_residual, FactorizationParams};

/// Eigenvalues below this make `S_ξ` numerically singular.
pub const SINGULAR_EIGENVALUE: f64 = 1e-13;
/// Slack in the lower eigenvalue bound.
pub const EIGEN_TOLERANCE: f64 = 1e-8;
/// Default residual tolerance for supported factorization.
pub const SUPPORTED_TOLERANCE: f64 = 1e-7;

fn require_circle(grid: &QuadratureGrid) -> Result<()> {
    if grid.kind != GroupKind::Torus1 {
        return Err(Error::Unsupported(format!("compactly supported factors are built on t1, not {}", grid.kind)));
    }
    Ok(())
}

fn angle(x: &GroupElement) -> f64 {
    match x {
        GroupElement::Torus1(t) => *t,
        _ => unreachable!("circle grid"),
    }
}

/// Signed circular distance from `center` to `x`, in `(-π, π]`.
fn circular_offset(x: f64, center: f64) -> f64 {
    let d = crate::group::wrap_angle(x - center);
    if d > PI { d - 2.0 * PI } else { d }
}

/// `x ↦ exp(-(1 - u²)^{-1/(s-1)})` with `u = (x - center)/halfwidth`
/// measured along the circle, zero for `|u| ≥ 1`.
pub fn gevrey_bump(s: f64, center: f64, halfwidth: f64, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    require_circle(grid)?;
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::Quasianalytic(format!("bump order s = {s} admits no compactly supported bump")));
    }
    if !(halfwidth > 0.0 && halfwidth < PI) {
        return Err(Error::Domain(format!("halfwidth {halfwidth} outside (0, π)")));
    }
    let p = 1.0 / (s - 1.0);
    Ok(GridFunction::from_scalar_fn(grid.clone(), |x| {
        let u = circular_offset(angle(x), center) / halfwidth;
        let r = 1.0 - u * u;
        if r <= 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(libm::exp(-libm::pow(r, -p)), 0.0)
        }
    }))
}

/// Fewest width-`δ` translates that can cover the circle.
pub fn required_pieces(delta: f64) -> usize {
    libm::floor(2.0 * PI / delta) as usize + 1
}

/// `⌈2π/(δ/2)⌉ + 1`.
pub fn default_pieces(delta: f64) -> usize {
    libm::ceil(4.0 * PI / delta) as usize + 1
}

fn check_cover(delta: f64, pieces: usize) -> Result<()> {
    if !(delta > 0.0 && delta < PI) {
        return Err(Error::Domain(format!("support radius δ = {delta} outside (0, π)")));
    }
    if pieces < required_pieces(delta) {
        return Err(Error::Coverage { pieces, required: required_pieces(delta) });
    }
    Ok(())
}

/// `χ_j = bump_j / Σ_i bump_i` for bumps of halfwidth `δ/2` centred at `2πj/k`.
pub fn bump_partition(grid: &Arc<QuadratureGrid>, delta: f64, pieces: usize, s: f64) -> Result<Vec<GridFunction>> {
    require_circle(grid)?;
    check_cover(delta, pieces)?;
    let bumps = (0..pieces)
        .map(|j| gevrey_bump(s, 2.0 * PI * j as f64 / pieces as f64, delta / 2.0, grid))
        .collect::<Result<Vec<_>>>()?;
    let mut total = alloc::vec![0.0; grid.len()];
    for b in &bumps {
        for (t, v) in total.iter_mut().zip(b.values()) {
            *t += v.re;
        }
    }
    if let Some(i) = total.iter().position(|t| *t <= 0.0) {
        return Err(Error::Domain(format!("bumps vanish at node {i}; the grid resolves the overlaps too coarsely")));
    }
    Ok(bumps
        .into_iter()
        .map(|b| {
            let values = b.values().iter().zip(&total).map(|(v, t)| v / *t).collect();
            GridFunction::new(grid.clone(), 1, values).expect("same grid")
        })
        .collect())
}

/// Support radius, number of pieces and bump order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportedParams {
    pub delta: f64,
    pub pieces: usize,
    pub bump_order: f64,
}

impl SupportedParams {
    /// Default piece count and `s = 2` bumps.
    pub fn new(delta: f64) -> Self {
        SupportedParams { delta, pieces: default_pieces(delta), bump_order: 2.0 }
    }
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub params: SupportedParams,
    pub chis: Vec<GridFunction>,
    /// `F^{-1}(e^{-ω(√λ_ξ)/(2h')} Id)` on the grid.
    pub kernel: GridFunction,
    /// `ψ_j = χ_j · kernel`.
    pub psis: Vec<GridFunction>,
}

impl Partition {
    /// `sup |Σ_j ψ_j - kernel|`.
    pub fn reconstruction_defect(&self) -> f64 {
        let mut sum = GridFunction::zeros(self.kernel.grid().clone(), 1);
        for p in &self.psis {
            sum = sum.combine(Complex64::new(1.0, 0.0), p, Complex64::new(1.0, 0.0)).expect("same grid");
        }
        sum.sup_distance(&self.kernel).expect("same grid")
    }
}

pub fn build_partition(
    grid: &Arc<QuadratureGrid>,
    params: SupportedParams,
    w: &WeightFunction,
    h_prime: f64,
) -> Result<Partition> {
    if !(h_prime > 0.0 && h_prime.is_finite()) {
        return Err(Error::Domain(format!("h' = {h_prime} must be a positive real")));
    }
    let chis = bump_partition(grid, params.delta, params.pieces, params.bump_order)?;
    let coeffs = FourierCoefficients::scalar_multiple_of_identity(grid.kind, grid.bandlimit, |xi| {
        libm::exp(-w.omega(xi.sqrt_casimir()) / (2.0 * h_prime))
    });
    let kernel = inverse_on(&coeffs, grid)?;
    let psis = chis
        .iter()
        .map(|c| {
            let values = c.values().iter().zip(kernel.values()).map(|(a, b)| a * b).collect();
            GridFunction::new(grid.clone(), 1, values)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition { params, chis, kernel, psis })
}

#[derive(Debug, Clone)]
pub struct SupportedFactorizationResult {
    /// `g = Σ ψ_j^* ∗ ψ_j`, synthesized from `S` on `f`'s grid.
    pub g: GridFunction,
    /// `S_ξ = F g(ξ)`.
    pub s: FourierCoefficients,
    /// Smallest eigenvalue of each `S_ξ`.
    pub mu: Vec<f64>,
    /// `μ_ξ - e^{-ω(√λ_ξ)/h'}/k`.
    pub eigen_margins: Vec<f64>,
    /// `F f'(ξ) = S_ξ^{-1} F f(ξ)`.
    pub f_prime: FourierCoefficients,
    pub params: FactorizationParams,
    pub support: SupportedParams,
    pub residual: f64,
    /// `sup |g|` over grid nodes outside `V`.
    pub outside_support_mass: f64,
    pub outside_support_relative: f64,
    /// `sup |Σ ψ_j - kernel|`.
    pub partition_defect: f64,
}

impl SupportedFactorizationResult {
    pub fn eigen_bound_holds(&self, tol: f64) -> bool {
        self.eigen_margins.iter().all(|m| *m >= -tol)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.mu.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn supported_factorize(
    f: &GridFunction,
    w: &WeightFunction,
    h: f64,
    h_prime: f64,
    support: SupportedParams,
) -> Result<SupportedFactorizationResult> {
    require_circle(f.grid())?;
    if !w.non_quasianalytic {
        return Err(Error::Quasianalytic("the weight admits no compactly supported test functions".into()));
    }
    let params = FactorizationParams::new(w.clone(), h, h_prime)?;
    let grid = f.grid();
    let bl = grid.bandlimit;
    let partition = build_partition(grid, support, w, h_prime)?;
    let partition_defect = partition.reconstruction_defect();

    let mut s = FourierCoefficients::zeros(grid.kind, bl, 1);
    for psi in &partition.psis {
        let a = forward(psi, bl)?;
        for i in 0..s.dual().len() {
            let d = s.dual()[i].dim;
            let blk = a.block(i);
            let prod = matmul(&adjoint(blk, d), blk, d);
            for (o, p) in s.block_mut(i).iter_mut().zip(prod) {
                *o += p;
            }
        }
    }

    let t = forward(f, bl)?;
    let k = support.pieces as f64;
    let mut mu = Vec::with_capacity(s.dual().len());
    let mut eigen_margins = Vec::with_capacity(s.dual().len());
    let mut f_prime = FourierCoefficients::zeros(grid.kind, bl, f.value_dim());
    for (i, xi) in s.dual().iter().enumerate() {
        let d = xi.dim;
        let m = hermitian_eigenvalues(s.block(i), d)[0];
        if m < SINGULAR_EIGENVALUE {
            return Err(Error::Conditioning { label: xi.label, min_eigenvalue: m });
        }
        mu.push(m);
        eigen_margins.push(m - libm::exp(-w.omega(xi.sqrt_casimir()) / h_prime) / k);
        let s_inv = inverse(s.block(i), d).ok_or(Error::Conditioning { label: xi.label, min_eigenvalue: m })?;
        for c in 0..f.value_dim() {
            let x = matmul(&s_inv, t.slice(i, c), d);
            f_prime.block_mut(i)[c * d * d..(c + 1) * d * d].copy_from_slice(&x);
        }
    }

    let residual = convolution_residual(f, &s, &f_prime)?;
    let g = inverse_on(&s, grid)?;
    let outside_support_mass = grid
        .nodes
        .iter()
        .zip(g.values())
        .filter(|(x, _)| libm::fabs(circular_offset(angle(x), 0.0)) >= support.delta)
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max);
    let sup_g = g.sup_norm();
    let outside_support_relative = if sup_g > 0.0 { outside_support_mass / sup_g } else { 0.0 };
    Ok(SupportedFactorizationResult {
        g,
        s,
        mu,
        eigen_margins,
        f_prime,
        params,
        support,
        residual,
        outside_support_mass,
        outside_support_relative,
        partition_defect,
    })
}

#[cfg(test)]
pub(super) fn offset_for_tests(x: f64, center: f64) -> f64 {
    circular_offset(x, center)
}
