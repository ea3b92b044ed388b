//! Spectral calculus of the Laplace-Beltrami operator: `Δ` acts on the
//! `ξ`-block by `-λ_ξ`, so powers of `Δ` are computed exactly on the
//! truncated dual and never by repeated differencing.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fourier::{forward, inverse_on, FourierCoefficients, GridFunction};
use crate::group::{matrix_coefficients, DualIndex, GroupElement, Su2};
use crate::weights::WeightFunction;

/// `j_max` used when the caller has no preference.
pub const DEFAULT_J_MAX: usize = 40;

/// The weighted sequence counts as settled once this many successive
/// terms fall below `EARLY_STOP_RATIO` times the running sup.
const EARLY_STOP_RUN: usize = 3;
const EARLY_STOP_RATIO: f64 = 1e-3;

/// Fitted constants above this cap count as inconsistent.
pub const CONSTANT_CAP: f64 = 1e4;

/// `F(Δf)(ξ) = -λ_ξ F f(ξ)`.
pub fn apply_laplacian(t: &FourierCoefficients) -> FourierCoefficients {
    t.scale_by(|xi| -xi.casimir)
}

/// Second-difference Laplacian of every matrix coefficient `ξ_ij` at `x`
/// along an orthonormal basis of the Lie algebra, compared with `-λ_ξ ξ_ij(x)`.
/// Returns `max_ij |Δξ_ij(x) + λ_ξ ξ_ij(x)|`.
pub fn laplacian_fd_defect(xi: &DualIndex, x: &GroupElement, step: f64) -> Result<f64> {
    if !(1e-4..=1e-1).contains(&step) {
        return Err(Error::Domain(format!("finite-difference step {step} outside [1e-4, 1e-1]")));
    }
    let center = matrix_coefficients(xi, x)?;
    let d2 = center.len();
    let mut lap = alloc::vec![num_complex::Complex64::new(0.0, 0.0); d2];
    let mut add_direction = |plus: GroupElement, minus: GroupElement| -> Result<()> {
        let fp = matrix_coefficients(xi, &plus)?;
        let fm = matrix_coefficients(xi, &minus)?;
        for e in 0..d2 {
            lap[e] += (fp[e] - center[e] * 2.0 + fm[e]) / (step * step);
        }
        Ok(())
    };
    match x {
        GroupElement::Torus1(a) => add_direction(GroupElement::Torus1(a + step), GroupElement::Torus1(a - step))?,
        GroupElement::Torus2([a, b]) => {
            add_direction(GroupElement::Torus2([a + step, *b]), GroupElement::Torus2([a - step, *b]))?;
            add_direction(GroupElement::Torus2([*a, b + step]), GroupElement::Torus2([*a, b - step]))?;
        }
        GroupElement::Su2(e) => {
            let q = Su2::from_euler(e)?;
            for k in 0..3 {
                let plus = q.mul(&Su2::exp_basis(k, step)).to_euler();
                let minus = q.mul(&Su2::exp_basis(k, -step)).to_euler();
                add_direction(GroupElement::Su2(plus), GroupElement::Su2(minus))?;
            }
        }
    }
    Ok(lap.iter().zip(&center).map(|(l, c)| (l + c * xi.casimir).norm()).fold(0.0, f64::max))
}

/// `‖Δ^j f‖_∞` for `j = 0..=j_max`, with `f` treated as band-limited at
/// its grid's band limit. Overflowing entries are `+∞`.
pub fn iterate_supnorms(f: &GridFunction, j_max: usize) -> Vec<f64> {
    multiplier_supnorms(f, j_max, |xi| -xi.casimir)
}

/// `‖(1 - Δ)^j f‖_∞` for `j = 0..=j_max`.
pub fn bessel_iterate_supnorms(f: &GridFunction, j_max: usize) -> Vec<f64> {
    multiplier_supnorms(f, j_max, |xi| 1.0 + xi.casimir)
}

fn multiplier_supnorms(f: &GridFunction, j_max: usize, mult: impl Fn(&DualIndex) -> f64) -> Vec<f64> {
    let t = forward(f, f.bandlimit()).expect("transform at the grid's own band limit");
    let mut out = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let overflow = t.dual().iter().any(|xi| !libm::pow(mult(xi), j as f64).is_finite());
        if overflow {
            out.push(f64::INFINITY);
            continue;
        }
        let tj = t.scale_by(|xi| libm::pow(mult(xi), j as f64));
        let s = inverse_on(&tj, f.grid()).expect("same grid").sup_norm();
        out.push(if s.is_finite() { s } else { f64::INFINITY });
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeminormRow {
    pub j: usize,
    pub supnorm: f64,
    /// `‖Δ^j f‖_∞ exp(-(1/h) φ*(2jh))`.
    pub weighted: f64,
}

/// The Laplacian-iterate seminorm
/// `p_{ω,h}(f) = sup_j ‖Δ^j f‖_∞ exp(-(1/h) φ*_ω(2jh))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormReport {
    pub weight: WeightFunction,
    pub h: f64,
    pub rows: Vec<SeminormRow>,
    pub value: f64,
    pub argmax: usize,
    /// Some `‖Δ^j f‖_∞` overflowed; those rows carry `+∞`.
    pub saturated: bool,
    /// The scan ended before `j_max` because the weighted terms settled.
    pub stopped_early: bool,
}

pub fn iterate_seminorm(f: &GridFunction, w: &WeightFunction, h: f64, j_max: usize) -> Result<SeminormReport> {
    let t = forward(f, f.bandlimit())?;
    let mut rows = Vec::new();
    let (mut value, mut argmax) = (0.0f64, 0usize);
    let mut saturated = false;
    let mut stopped_early = false;
    let mut small_run = 0;
    for j in 0..=j_max {
        let supnorm = {
            let overflow = t.dual().iter().any(|xi| !libm::pow(xi.casimir, j as f64).is_finite());
            if overflow {
                f64::INFINITY
            } else {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let tj = t.scale_by(|xi| sign * libm::pow(xi.casimir, j as f64));
                inverse_on(&tj, f.grid())?.sup_norm()
            }
        };
        let penalty = w.young_conjugate(h, 2.0 * j as f64)?;
        // the product is formed in log space so huge iterates meet tiny weights
        let weighted = if supnorm == 0.0 || penalty.is_infinite() {
            0.0
        } else if supnorm.is_infinite() {
            saturated = true;
            f64::INFINITY
        } else {
            libm::exp(libm::log(supnorm) - penalty)
        };
        rows.push(SeminormRow { j, supnorm, weighted });
        if weighted > value {
            value = weighted;
            argmax = j;
        }
        if j > 0 && weighted < EARLY_STOP_RATIO * value {
            small_run += 1;
            if small_run >= EARLY_STOP_RUN && j < j_max {
                stopped_early = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    Ok(SeminormReport { weight: w.clone(), h, rows, value, argmax, saturated, stopped_early })
}

/// Empirical shadow of the two-sided estimates between Fourier decay and
/// Laplacian iterates, using `s_j = ‖(1 - Δ)^j f‖_∞` and `n = dim G`:
///
/// * `‖F f(ξ)‖_HS <= C₁ min_j (1 + λ_ξ)^{n - j} s_j`,
/// * `s_j <= C₂ sup_ξ (1 + λ_ξ)^{j + n} ‖F f(ξ)‖_HS`.
///
/// `lhs` is the decay seminorm `sup_ξ ‖F f(ξ)‖_HS e^{ω(√λ_ξ)/h}` and
/// `rhs_bound` is `C₁` times the same seminorm of the iterate envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratesDecayCheck {
    pub lhs: f64,
    pub rhs_bound: f64,
    pub c1: f64,
    pub c2: f64,
    pub consistent: bool,
}

pub fn iterates_vs_decay_check(f: &GridFunction, w: &WeightFunction, h: f64) -> Result<IteratesDecayCheck> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("h = {h} must be positive")));
    }
    let t = forward(f, f.bandlimit())?;
    let norms = t.hs_norms();
    let n = f.kind().dimension() as f64;
    let s = bessel_iterate_supnorms(f, DEFAULT_J_MAX);

    let mut c1: f64 = 0.0;
    let mut lhs: f64 = 0.0;
    let mut env_weighted: f64 = 0.0;
    for (xi, norm) in t.dual().iter().zip(&norms) {
        let base = 1.0 + xi.casimir;
        let env = s
            .iter()
            .enumerate()
            .map(|(j, sj)| libm::pow(base, n - j as f64) * sj)
            .fold(f64::INFINITY, f64::min);
        let weight = libm::exp(w.omega(xi.sqrt_casimir()) / h);
        lhs = lhs.max(norm * weight);
        env_weighted = env_weighted.max(env * weight);
        if *norm > 0.0 {
            c1 = c1.max(norm / env);
        }
    }
    let mut c2: f64 = 0.0;
    for (j, sj) in s.iter().enumerate() {
        let sup = t
            .dual()
            .iter()
            .zip(&norms)
            .map(|(xi, nm)| libm::pow(1.0 + xi.casimir, j as f64 + n) * nm)
            .fold(0.0, f64::max);
        if *sj > 0.0 {
            c2 = c2.max(sj / sup);
        }
    }
    let rhs_bound = c1 * env_weighted;
    let consistent = c1.is_finite() && c2.is_finite() && c1 <= CONSTANT_CAP && c2 <= CONSTANT_CAP && lhs <= rhs_bound * (1.0 + 1e-12);
    Ok(IteratesDecayCheck { lhs, rhs_bound, c1, c2, consistent })
}
