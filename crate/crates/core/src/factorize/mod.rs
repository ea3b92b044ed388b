//! Strong factorization through convolution.
//!
//! With `C_ξ = e^{ω(√λ_ξ)/h'}`, a band-limited `f` splits as `f = g ∗ f'`
//! where `F g(ξ) = C_ξ^{-1} Id` and `F f'(ξ) = C_ξ F f(ξ)`. The same `g`
//! serves a whole family, and for a finite-dimensional representation
//! the orbit of a vector factors as `v = Π(ǧ) ṽ`.

mod supported;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::classify::decay_seminorm;
use crate::error::{Error, Result};
use crate::fourier::{convolve, evaluate, forward, inverse_on, FourierCoefficients, GridFunction};
use crate::group::{haar_quadrature, matrix_coefficients, DualIndex, DualLabel, GroupElement, GroupKind, QuadratureGrid};
use crate::linalg::{adjoint, identity, matmul, matvec};
use crate::weights::WeightFunction;

pub use supported::{
    build_partition, bump_partition, default_pieces, gevrey_bump, required_pieces, supported_factorize,
    Partition, SupportedFactorizationResult, SupportedParams, EIGEN_TOLERANCE, SINGULAR_EIGENVALUE,
    SUPPORTED_TOLERANCE,
};

/// Default residual tolerance for global factorization.
pub const GLOBAL_TOLERANCE: f64 = 1e-8;

/// A finite-dimensional unitary representation
/// `π(x) = B · blockdiag(ξ_1(x), ..., ξ_r(x)) · B†` on `C^m`, `m = Σ d_ξi`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRep {
    pub kind: GroupKind,
    pub blocks: Vec<DualIndex>,
    /// Unitary `m × m` change of basis `B`, row-major.
    pub basis: Vec<Complex64>,
}

impl FiniteRep {
    pub fn new(kind: GroupKind, labels: &[DualLabel]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Domain("a representation needs at least one block".into()));
        }
        let blocks: Vec<DualIndex> = labels.iter().map(|l| DualIndex::from_label(*l)).collect();
        if let Some(bad) = blocks.iter().find(|b| b.kind() != kind) {
            return Err(Error::Domain(format!("block {} does not belong to {kind}", bad.label)));
        }
        let m = blocks.iter().map(|b| b.dim).sum();
        Ok(FiniteRep { kind, blocks, basis: identity(m) })
    }

    /// Replaces the change of basis; it must be unitary to `1e-10`.
    pub fn with_basis(mut self, basis: Vec<Complex64>) -> Result<Self> {
        let m = self.dim();
        if basis.len() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: basis.len() });
        }
        let prod = matmul(&basis, &adjoint(&basis, m), m);
        let dev = prod.iter().zip(identity(m)).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if dev > 1e-10 {
            return Err(Error::Domain(format!("change of basis is not unitary (deviation {dev:e})")));
        }
        self.basis = basis;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// Largest band limit among the blocks, at least 1.
    pub fn bandlimit(&self) -> usize {
        self.blocks.iter().map(|b| b.bandlimit()).max().unwrap_or(0).max(1)
    }

    /// `π(x)` as a row-major `m × m` matrix.
    pub fn matrix(&self, x: &GroupElement) -> Result<Vec<Complex64>> {
        let m = self.dim();
        let mut diag = vec![Complex64::new(0.0, 0.0); m * m];
        let mut off = 0;
        for b in &self.blocks {
            let u = matrix_coefficients(b, x)?;
            for i in 0..b.dim {
                for j in 0..b.dim {
                    diag[(off + i) * m + off + j] = u[i * b.dim + j];
                }
            }
            off += b.dim;
        }
        Ok(matmul(&matmul(&self.basis, &diag, m), &adjoint(&self.basis, m), m))
    }

    fn check_vector(&self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    fn check_grid(&self, grid: &QuadratureGrid) -> Result<()> {
        if grid.kind != self.kind {
            return Err(Error::Precondition(format!("grid on {} for a representation of {}", grid.kind, self.kind)));
        }
        if grid.bandlimit < self.bandlimit() {
            return Err(Error::Precondition(format!(
                "grid band limit {} below the representation's {}",
                grid.bandlimit,
                self.bandlimit()
            )));
        }
        Ok(())
    }
}

/// The orbit `γ_v(x) = π(x) v` on the grid of the representation's band limit.
pub fn orbit_map(rep: &FiniteRep, v: &[Complex64]) -> Result<GridFunction> {
    let grid = Arc::new(haar_quadrature(rep.kind, rep.bandlimit()));
    orbit_map_on(rep, v, &grid)
}

pub fn orbit_map_on(rep: &FiniteRep, v: &[Complex64], grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    rep.check_vector(v)?;
    rep.check_grid(grid)?;
    let m = rep.dim();
    let mut values = Vec::with_capacity(grid.len() * m);
    for x in &grid.nodes {
        values.extend(matvec(&rep.matrix(x)?, v, m));
    }
    GridFunction::new(grid.clone(), m, values)
}

/// `Π(χ) = ∫ χ(x) π(x) dx` as an `m × m` matrix, by quadrature on `χ`'s grid.
pub fn induced_operator(rep: &FiniteRep, chi: &GridFunction) -> Result<Vec<Complex64>> {
    if chi.value_dim() != 1 {
        return Err(Error::Unsupported("the convolution algebra acts through scalar functions".into()));
    }
    rep.check_grid(chi.grid())?;
    let m = rep.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); m * m];
    for (i, x) in chi.grid().nodes.iter().enumerate() {
        let c = chi.values()[i] * chi.grid().weights[i];
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (o, p) in out.iter_mut().zip(rep.matrix(x)?) {
            *o += c * p;
        }
    }
    Ok(out)
}

/// `Π(χ) v`.
pub fn induced_action(rep: &FiniteRep, chi: &GridFunction, v: &[Complex64]) -> Result<Vec<Complex64>> {
    rep.check_vector(v)?;
    Ok(matvec(&induced_operator(rep, chi)?, v, rep.dim()))
}

/// Weight, decay parameter and the stronger parameter `h' > h`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationParams {
    pub weight: WeightFunction,
    pub h: f64,
    pub h_prime: f64,
}

impl FactorizationParams {
    pub fn new(weight: WeightFunction, h: f64, h_prime: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("h = {h} must be a positive real")));
        }
        if !(h_prime > h) || !h_prime.is_finite() {
            return Err(Error::Parameter(format!("h' = {h_prime} must exceed h = {h}")));
        }
        Ok(FactorizationParams { weight, h, h_prime })
    }

    /// `h' = 2h`.
    pub fn with_default_prime(weight: WeightFunction, h: f64) -> Result<Self> {
        Self::new(weight, h, 2.0 * h)
    }

    /// The decay exponent `(1/h - 1/h')^{-1}` that `f'` retains.
    pub fn effective_h(&self) -> f64 {
        1.0 / (1.0 / self.h - 1.0 / self.h_prime)
    }

    /// `C_ξ = e^{ω(√λ_ξ)/h'}`.
    pub fn multiplier(&self, xi: &DualIndex) -> f64 {
        libm::exp(self.weight.omega(xi.sqrt_casimir()) / self.h_prime)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult {
    /// `F g(ξ) = C_ξ^{-1} Id`.
    pub g: FourierCoefficients,
    /// `F f'(ξ) = C_ξ F f(ξ)`.
    pub f_prime: FourierCoefficients,
    /// `C_ξ`, aligned with the dual of `g`.
    pub multipliers: Vec<f64>,
    pub params: FactorizationParams,
    /// `sup |f - g ∗ f'|` on the grid.
    pub residual: f64,
    /// `decay_seminorm(F f, ω, h)`.
    pub seminorm_f: f64,
    /// `decay_seminorm(F f', ω, (1/h - 1/h')^{-1})`.
    pub seminorm_f_prime: f64,
    /// Per `ξ`: `decay_seminorm(F f, ω, h) - ‖F f'(ξ)‖_HS e^{(1/h - 1/h')ω(√λ_ξ)}`.
    pub decay_margins: Vec<f64>,
}

impl FactorizationResult {
    pub fn min_decay_margin(&self) -> f64 {
        self.decay_margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn factor_coefficients(
    t: &FourierCoefficients,
    params: &FactorizationParams,
) -> Result<(FourierCoefficients, FourierCoefficients, Vec<f64>)> {
    let multipliers: Vec<f64> = t.dual().iter().map(|xi| params.multiplier(xi)).collect();
    if let Some(bad) = multipliers.iter().position(|c| !c.is_finite()) {
        return Err(Error::Parameter(format!(
            "multiplier at {} overflows; lower the band limit or raise h'",
            t.dual()[bad].label
        )));
    }
    let g = FourierCoefficients::scalar_multiple_of_identity(t.kind(), t.bandlimit(), |xi| 1.0 / params.multiplier(xi));
    let f_prime = t.scale_by(|xi| params.multiplier(xi));
    Ok((g, f_prime, multipliers))
}

fn decay_margins(t: &FourierCoefficients, f_prime: &FourierCoefficients, params: &FactorizationParams) -> Result<(f64, f64, Vec<f64>)> {
    let w = &params.weight;
    let h_eff = params.effective_h();
    let seminorm_f = decay_seminorm(t, w, params.h)?;
    let seminorm_f_prime = decay_seminorm(f_prime, w, h_eff)?;
    let margins = f_prime
        .dual()
        .iter()
        .zip(f_prime.hs_norms())
        .map(|(xi, n)| seminorm_f - n * libm::exp(w.omega(xi.sqrt_casimir()) / h_eff))
        .collect();
    Ok((seminorm_f, seminorm_f_prime, margins))
}

/// Factors `f = g ∗ f'` at the band limit of `f`'s grid and reports the
/// residual and the decay transfer.
pub fn strong_factorize(f: &GridFunction, w: &WeightFunction, h: f64, h_prime: f64) -> Result<FactorizationResult> {
    let params = FactorizationParams::new(w.clone(), h, h_prime)?;
    let t = forward(f, f.bandlimit())?;
    let (g, f_prime, multipliers) = factor_coefficients(&t, &params)?;
    let residual = convolution_residual(f, &g, &f_prime)?;
    let (seminorm_f, seminorm_f_prime, decay_margins) = decay_margins(&t, &f_prime, &params)?;
    Ok(FactorizationResult { g, f_prime, multipliers, params, residual, seminorm_f, seminorm_f_prime, decay_margins })
}

/// `sup |f - g ∗ f'|` with both factors synthesized on `f`'s grid.
pub(crate) fn convolution_residual(f: &GridFunction, g: &FourierCoefficients, f_prime: &FourierCoefficients) -> Result<f64> {
    let grid = f.grid();
    let gg = inverse_on(g, grid)?;
    let fp = inverse_on(f_prime, grid)?;
    convolve(&gg, &fp)?.sup_distance(f)
}

/// One `g` for a whole family.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedFactorization {
    pub g: FourierCoefficients,
    pub f_primes: Vec<FourierCoefficients>,
    pub multipliers: Vec<f64>,
    pub params: FactorizationParams,
    pub residuals: Vec<f64>,
    /// `sup_i decay_seminorm(F f'_i, ω, (1/h - 1/h')^{-1})`, the bound
    /// certifying that the factored family stays bounded.
    pub sup_seminorm: f64,
    pub min_decay_margin: f64,
}

pub fn bounded_factorize_set(fs: &[GridFunction], w: &WeightFunction, h: f64, h_prime: f64) -> Result<BoundedFactorization> {
    let params = FactorizationParams::new(w.clone(), h, h_prime)?;
    let first = fs.first().ok_or_else(|| Error::Domain("empty family".into()))?;
    let bl = first.bandlimit();
    let mut g = None;
    let mut multipliers = Vec::new();
    let mut f_primes = Vec::with_capacity(fs.len());
    let mut residuals = Vec::with_capacity(fs.len());
    let mut sup_seminorm: f64 = 0.0;
    let mut min_margin = f64::INFINITY;
    for f in fs {
        first.check_same_grid(f)?;
        let t = forward(f, bl)?;
        let (gi, fp, mult) = factor_coefficients(&t, &params)?;
        residuals.push(convolution_residual(f, &gi, &fp)?);
        let (_, sp, margins) = decay_margins(&t, &fp, &params)?;
        sup_seminorm = sup_seminorm.max(sp);
        min_margin = margins.iter().copied().fold(min_margin, f64::min);
        f_primes.push(fp);
        if g.is_none() {
            g = Some(gi);
            multipliers = mult;
        }
    }
    Ok(BoundedFactorization {
        g: g.expect("nonempty family"),
        f_primes,
        multipliers,
        params,
        residuals,
        sup_seminorm,
        min_decay_margin: min_margin,
    })
}

#[derive(Debug, Clone)]
pub struct VectorFactorization {
    /// `ǧ(x) = g(x⁻¹)` on the orbit grid.
    pub g_check: GridFunction,
    /// `ṽ = f'_v(e) = Σ_ξ d_ξ C_ξ Tr[F γ_v(ξ)]`.
    pub v_tilde: Vec<Complex64>,
    /// `max_c |v_c - (Π(ǧ) ṽ)_c|`.
    pub residual: f64,
    /// `sup |γ_ṽ - f'_v|` on the grid.
    pub orbit_residual: f64,
    pub factorization: FactorizationResult,
}

pub fn factorize_vector(
    rep: &FiniteRep,
    v: &[Complex64],
    w: &WeightFunction,
    h: f64,
    h_prime: f64,
) -> Result<VectorFactorization> {
    rep.check_vector(v)?;
    FactorizationParams::new(w.clone(), h, h_prime)?;
    let gamma = orbit_map(rep, v)?;
    let grid = gamma.grid().clone();
    let fact = strong_factorize(&gamma, w, h, h_prime)?;
    let v_tilde = evaluate(&fact.f_prime, &GroupElement::identity(rep.kind))?;
    let g_check = reflect(&fact.g, &grid)?;
    let pv = induced_action(rep, &g_check, &v_tilde)?;
    let residual = v.iter().zip(&pv).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let orbit_tilde = orbit_map_on(rep, &v_tilde, &grid)?;
    let orbit_residual = orbit_tilde.sup_distance(&inverse_on(&fact.f_prime, &grid)?)?;
    Ok(VectorFactorization { g_check, v_tilde, residual, orbit_residual, factorization: fact })
}

/// `x ↦ g(x⁻¹)` on `grid`: a reindexing on tori, pointwise synthesis on `SU(2)`.
fn reflect(g: &FourierCoefficients, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    let values = match grid.kind {
        GroupKind::Su2 => {
            let mut values = Vec::with_capacity(grid.len());
            for x in &grid.nodes {
                values.push(evaluate(g, &x.inverse()?)?[0]);
            }
            values
        }
        _ => {
            let direct = inverse_on(g, grid)?;
            (0..grid.len()).map(|i| direct.values()[grid.inverse_node(i).expect("torus grid")]).collect()
        }
    };
    GridFunction::new(grid.clone(), 1, values)
}

/// `max_ξ ‖(π(x) ⊗ Id) F γ_v(ξ) - ξ*(x) ∘ F γ_v(ξ)‖_HS`: the equivariance
/// of the orbit's Fourier coefficients that makes `γ_ṽ = f'_v`.
pub fn orbit_equivariance_defect(rep: &FiniteRep, v: &[Complex64], x: &GroupElement) -> Result<f64> {
    let gamma = orbit_map(rep, v)?;
    let t = forward(&gamma, gamma.bandlimit())?;
    let m = rep.dim();
    let p = rep.matrix(x)?;
    let mut worst: f64 = 0.0;
    for (i, xi) in t.dual().iter().enumerate() {
        let d = xi.dim;
        let d2 = d * d;
        let xs = adjoint(&matrix_coefficients(xi, x)?, d);
        for c in 0..m {
            let mut lhs = vec![Complex64::new(0.0, 0.0); d2];
            for c2 in 0..m {
                for (o, s) in lhs.iter_mut().zip(t.slice(i, c2)) {
                    *o += p[c * m + c2] * s;
                }
            }
            let rhs = matmul(&xs, t.slice(i, c), d);
            let dist = libm::sqrt(lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>());
            worst = worst.max(dist);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests;
