//! Decay diagnostics for Fourier coefficient families: weighted decay
//! seminorms, regression estimates of the critical decay parameter and
//! the Gevrey order, and a weight fitted to observed decay.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fourier::FourierCoefficients;
use crate::weights::WeightFunction;

/// Hilbert-Schmidt norms at or below this are exact zeros for fitting.
pub const ZERO_FLOOR: f64 = 1e-300;

const MIN_NONZERO: usize = 8;

/// Upper-half slope steeper than the lower-half slope by more than this
/// factor flags decay faster than any `e^{-ω/h}`.
const SUPER_DECAY_FACTOR: f64 = 1.5;

/// Ceiling on `n` in the fitted weight when the coefficients vanish at the
/// top of the truncated dual.
const N_CAP: usize = 32;

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && !h.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!("h = {h} must be positive")))
    }
}

/// `sup_ξ ‖T_ξ‖_HS e^{ω(√λ_ξ)/h}`, per-slice max for vector coefficients.
pub fn decay_seminorm(t: &FourierCoefficients, w: &WeightFunction, h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(t.dual()
        .iter()
        .zip(t.hs_norms())
        .map(|(xi, n)| if n == 0.0 { 0.0 } else { libm::exp(libm::log(n) + w.omega(xi.sqrt_casimir()) / h) })
        .fold(0.0, f64::max))
}

/// Ordinary least squares `y ≈ slope x + intercept`, with the RMS residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(ys).map(|(x, y)| { let r = y - slope * x - intercept; r * r }).sum();
    Some(LinearFit { slope, intercept, residual: libm::sqrt(ss / n) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayPoint {
    pub sqrt_lambda: f64,
    pub log_hsnorm: f64,
    /// Regression prediction `c - ω(√λ)/h*`.
    pub fitted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub weight: WeightFunction,
    /// `(h, decay_seminorm(T, ω, h))`, ascending in `h`.
    pub h_table: Vec<(f64, f64)>,
    /// `+∞` when the fitted slope is nonnegative.
    pub h_star: f64,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    /// Decay accelerates relative to `ω` along the dual.
    pub super_decay: bool,
    pub points: Vec<DecayPoint>,
}

/// Regression of `log ‖T_ξ‖_HS` on `ω(√λ_ξ)` over the entries with
/// `ω(√λ_ξ) > 0` and a nonzero norm; `h* = -1 / slope`.
pub fn estimate_critical_h(t: &FourierCoefficients, w: &WeightFunction) -> Result<DecayReport> {
    let norms = t.hs_norms();
    let nonzero = norms.iter().filter(|n| **n > ZERO_FLOOR).count();
    if nonzero < MIN_NONZERO {
        return Err(Error::InsufficientData(format!(
            "{nonzero} nonzero coefficient blocks, at least {MIN_NONZERO} required"
        )));
    }
    let mut pts: Vec<(f64, f64, f64)> = t
        .dual()
        .iter()
        .zip(&norms)
        .filter(|(_, n)| **n > ZERO_FLOOR)
        .map(|(xi, n)| (xi.sqrt_casimir(), w.omega(xi.sqrt_casimir()), libm::log(*n)))
        .filter(|(_, om, _)| *om > 0.0)
        .collect();
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let xs: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.2).collect();
    let fit = linear_fit(&xs, &ys).ok_or_else(|| {
        Error::InsufficientData("fewer than 2 distinct eigenvalues with positive weight".into())
    })?;
    let h_star = if fit.slope < 0.0 { -1.0 / fit.slope } else { f64::INFINITY };

    let half = xs.len() / 2;
    let super_decay = match (linear_fit(&xs[..half], &ys[..half]), linear_fit(&xs[half..], &ys[half..])) {
        (Some(lo), Some(hi)) => lo.slope < 0.0 && hi.slope < SUPER_DECAY_FACTOR * lo.slope,
        _ => false,
    };

    let center = if h_star.is_finite() { h_star } else { 1.0 };
    let h_table = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0]
        .iter()
        .map(|f| {
            let h = center * f;
            (h, decay_seminorm(t, w, h).expect("h > 0"))
        })
        .collect();
    let points = pts
        .iter()
        .map(|(sl, om, y)| DecayPoint { sqrt_lambda: *sl, log_hsnorm: *y, fitted: fit.intercept + fit.slope * om })
        .collect();
    Ok(DecayReport {
        weight: w.clone(),
        h_table,
        h_star,
        slope: fit.slope,
        intercept: fit.intercept,
        residual: fit.residual,
        super_decay,
        points,
    })
}

/// Fits `log(-log ‖T_ξ‖_HS) ≈ s log √λ_ξ + c` over blocks with `λ_ξ > 0`
/// and `0 < ‖T_ξ‖_HS < 1`; returns `s`. Orders outside `(0, 1]` are
/// returned as measured and left to the caller to flag.
pub fn gevrey_order_estimate(t: &FourierCoefficients) -> Result<f64> {
    let norms = t.hs_norms();
    let (xs, ys): (Vec<f64>, Vec<f64>) = t
        .dual()
        .iter()
        .zip(&norms)
        .filter(|(xi, n)| xi.casimir > 0.0 && **n > ZERO_FLOOR && **n < 1.0)
        .map(|(xi, n)| (libm::log(xi.sqrt_casimir()), libm::log(-libm::log(*n))))
        .unzip();
    let fit = linear_fit(&xs, &ys)
        .ok_or_else(|| Error::Estimation("coefficients do not decay below 1 on enough eigenvalues".into()))?;
    if !(fit.slope > 0.0) {
        return Err(Error::Estimation(format!("nondecreasing coefficients (fitted order {})", fit.slope)));
    }
    Ok(fit.slope)
}

/// Whether a measured Gevrey order lies in the admissible weight range.
pub fn gevrey_order_in_range(s: f64) -> bool {
    s > 0.0 && s <= 1.0
}

/// Largest reliable moment order: the number of factors `(1 + λ_max)` that
/// separate the largest coefficient from those at the top of the
/// truncated dual. Coefficients vanishing at the top allow [`N_CAP`].
pub fn reliable_moment_order(t: &FourierCoefficients) -> usize {
    let norms = t.hs_norms();
    let lambda_max = t.dual().iter().map(|xi| xi.casimir).fold(0.0, f64::max);
    let top = t
        .dual()
        .iter()
        .zip(&norms)
        .filter(|(xi, _)| xi.bandlimit() == t.bandlimit())
        .map(|(_, n)| *n)
        .fold(0.0, f64::max);
    let peak = norms.iter().copied().fold(0.0, f64::max);
    if peak <= ZERO_FLOOR {
        return 0;
    }
    if top <= ZERO_FLOOR || lambda_max == 0.0 {
        return N_CAP;
    }
    let n = libm::floor(libm::log(peak / top) / libm::log(1.0 + lambda_max) + 1e-9);
    (n.max(0.0) as usize).min(N_CAP)
}

/// The tabulated weight `max{0, g(t)}` with
/// `g(t) = max_{n <= min(t, n_max)} [n log(1 + t) - log C_n]` and
/// `C_n = sup_ξ ‖T_ξ‖_HS (1 + λ_ξ)^n`, forced to vanish on `[0, 1]`.
/// The argument `t` lives on the `λ` axis; knots run over the integers up to
/// 64 and then geometrically to `λ_max`.
pub fn fit_weight_from_decay(t: &FourierCoefficients) -> Result<WeightFunction> {
    let n_max = reliable_moment_order(t);
    if n_max < 1 {
        return Err(Error::Precondition(
            "coefficients show no polynomial decay on the truncated dual".into(),
        ));
    }
    let norms = t.hs_norms();
    let log_c: Vec<f64> = (0..=n_max)
        .map(|n| {
            t.dual()
                .iter()
                .zip(&norms)
                .filter(|(_, nm)| **nm > ZERO_FLOOR)
                .map(|(xi, nm)| libm::log(*nm) + n as f64 * libm::log1p(xi.casimir))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let lambda_max = t.dual().iter().map(|xi| xi.casimir).fold(0.0, f64::max).max(2.0);
    let mut grid: Vec<f64> = (0..=64).map(|i| i as f64).take_while(|x| *x <= lambda_max).collect();
    let start = grid.last().copied().unwrap_or(0.0).max(1.0);
    if lambda_max > start {
        let steps = 256;
        for i in 1..=steps {
            grid.push(start * libm::pow(lambda_max / start, i as f64 / steps as f64));
        }
    }
    let mut knots: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    let mut running: f64 = 0.0;
    for &x in &grid {
        let g = if x <= 1.0 {
            0.0
        } else {
            let top = (libm::floor(x) as usize).min(n_max);
            (0..=top).map(|n| n as f64 * libm::log1p(x) - log_c[n]).fold(f64::NEG_INFINITY, f64::max)
        };
        running = running.max(g.max(0.0));
        if knots.last().map_or(true, |k| x > k.0) {
            knots.push((x, running));
        }
    }
    WeightFunction::tabulated(knots)
}
