//! Weight functions `ω`, the convex functions `φ(u) = ω(e^u)` and their
//! Young conjugates `φ*(t) = sup_{u >= 0} (t u - φ(u))`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default `u`-grid spacing for numerically evaluated conjugates.
pub const DEFAULT_RESOLUTION: f64 = 1e-3;

/// Beyond this `u` the exponential `e^u` overflows; a conjugate whose
/// objective is still increasing there is reported as `+∞`.
const U_CAP: f64 = 700.0;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `ω(t) = max(0, t^s - 1)` with `0 < s <= 1`.
    Gevrey { s: f64 },
    /// `ω(t) = log(1 + t)`.
    Log1p,
    /// Piecewise linear through sorted knots `(t, ω(t))`, constant below
    /// the first knot and continued with the last slope beyond the last.
    Tabulated { knots: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    pub kind: WeightKind,
    /// `ω(t) = o(t)`.
    pub satisfies_beta0: bool,
    /// `∫_1^∞ ω(t) / t² dt < ∞`, the condition admitting compactly
    /// supported class members.
    pub non_quasianalytic: bool,
}

impl WeightFunction {
    pub fn gevrey(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::Domain(format!("Gevrey exponent s = {s} outside (0, 1]")));
        }
        Ok(WeightFunction {
            kind: WeightKind::Gevrey { s },
            satisfies_beta0: s < 1.0,
            non_quasianalytic: s < 1.0,
        })
    }

    pub fn log1p() -> Self {
        WeightFunction { kind: WeightKind::Log1p, satisfies_beta0: true, non_quasianalytic: true }
    }

    /// Knots must have strictly increasing, nonnegative `t` and
    /// nondecreasing, nonnegative `ω`. At least two knots are required.
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Domain(format!("tabulated weight needs at least 2 knots, got {}", knots.len())));
        }
        for (i, &(t, w)) in knots.iter().enumerate() {
            if !(t.is_finite() && w.is_finite() && t >= 0.0 && w >= 0.0) {
                return Err(Error::Domain(format!("invalid knot ({t}, {w})")));
            }
            if i > 0 {
                let (tp, wp) = knots[i - 1];
                if t <= tp || w < wp {
                    return Err(Error::Domain(format!(
                        "knots must increase in t and be nondecreasing in ω: ({tp}, {wp}) then ({t}, {w})"
                    )));
                }
            }
        }
        let flat_tail = tail_slope(&knots) == 0.0;
        Ok(WeightFunction {
            kind: WeightKind::Tabulated { knots },
            satisfies_beta0: flat_tail,
            non_quasianalytic: flat_tail,
        })
    }

    /// `ω(t)`; `t` must be nonnegative.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("weight argument t = {t} must be >= 0")));
        }
        Ok(self.omega(t))
    }

    /// `ω(t)` without the domain check; callers guarantee `t >= 0`.
    pub(crate) fn omega(&self, t: f64) -> f64 {
        match &self.kind {
            WeightKind::Gevrey { s } => {
                if t <= 1.0 {
                    0.0
                } else {
                    libm::pow(t, *s) - 1.0
                }
            }
            WeightKind::Log1p => libm::log1p(t),
            WeightKind::Tabulated { knots } => interpolate(knots, t),
        }
    }

    /// `φ(u) = ω(e^u)`.
    pub fn phi(&self, u: f64) -> f64 {
        self.omega(libm::exp(u))
    }

    /// `(1/h) φ*(h t)`, the form in which the conjugate enters the
    /// Laplacian-iterate seminorms.
    pub fn young_conjugate(&self, h: f64, t: f64) -> Result<f64> {
        check_h(h)?;
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("conjugate argument t = {t} must be >= 0")));
        }
        match self.kind {
            WeightKind::Gevrey { s } => Ok(gevrey_conjugate(s, h * t) / h),
            _ => Ok(YoungConjugate::new(self.clone(), h, DEFAULT_RESOLUTION)?.eval_unchecked(t)),
        }
    }
}

fn tail_slope(knots: &[(f64, f64)]) -> f64 {
    let n = knots.len();
    let (t0, w0) = knots[n - 2];
    let (t1, w1) = knots[n - 1];
    (w1 - w0) / (t1 - t0)
}

fn interpolate(knots: &[(f64, f64)], t: f64) -> f64 {
    let n = knots.len();
    if t <= knots[0].0 {
        return knots[0].1;
    }
    if t >= knots[n - 1].0 {
        return knots[n - 1].1 + tail_slope(knots) * (t - knots[n - 1].0);
    }
    let i = knots.partition_point(|k| k.0 <= t);
    let (t0, w0) = knots[i - 1];
    let (t1, w1) = knots[i];
    w0 + (w1 - w0) * (t - t0) / (t1 - t0)
}

/// Closed form of `φ*` for `φ(u) = max(0, e^{su} - 1)`.
pub fn gevrey_conjugate(s: f64, tau: f64) -> f64 {
    if tau <= s {
        0.0
    } else {
        let r = tau / s;
        1.0 + r * (libm::log(r) - 1.0)
    }
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("h = {h} must be a positive real")))
    }
}

/// `ω(t)`; negative `t` is a domain error.
pub fn eval_weight(w: &WeightFunction, t: f64) -> Result<f64> {
    w.eval(t)
}

/// `(1/h) φ*_ω(h t)`: closed form for Gevrey weights, `u`-grid
/// maximization otherwise.
pub fn young_conjugate(w: &WeightFunction, h: f64, t: f64) -> Result<f64> {
    w.young_conjugate(h, t)
}

/// Grid evaluator for `t ↦ (1/h) φ*(h t)`, independent of any closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungConjugate {
    pub source: WeightFunction,
    pub h: f64,
    /// `u`-grid spacing.
    pub resolution: f64,
}

impl YoungConjugate {
    pub fn new(source: WeightFunction, h: f64, resolution: f64) -> Result<Self> {
        check_h(h)?;
        if !(resolution > 0.0 && resolution < 1.0) {
            return Err(Error::Domain(format!("grid resolution {resolution} outside (0, 1)")));
        }
        Ok(YoungConjugate { source, h, resolution })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("conjugate argument t = {t} must be >= 0")));
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        grid_conjugate(|u| self.source.phi(u), self.h * t, self.resolution) / self.h
    }
}

/// `max(0, sup_{u >= 0} (τ u - φ(u)))` by a uniform scan followed by a
/// golden-section polish around the best grid point. The upper end `U`
/// doubles until the objective decreases there.
fn grid_conjugate(phi: impl Fn(f64) -> f64, tau: f64, du: f64) -> f64 {
    let obj = |u: f64| tau * u - phi(u);
    let mut upper = 1.0;
    loop {
        if obj(upper) <= obj(upper - du) {
            break;
        }
        upper *= 2.0;
        if upper > U_CAP {
            return f64::INFINITY;
        }
    }
    let steps = libm::ceil(upper / du) as usize;
    let (mut best_u, mut best) = (0.0, obj(0.0));
    for i in 1..=steps {
        let u = i as f64 * du;
        let v = obj(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    let (mut a, mut b) = ((best_u - du).max(0.0), best_u + du);
    let ratio = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (obj(x1), obj(x2));
    for _ in 0..60 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = obj(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = obj(x1);
        }
    }
    best.max(f1).max(f2).max(0.0)
}

/// Empirical witnesses for the weight axioms on a log-spaced sample of
/// `[1, t_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// `sup ω(2t) / ω(t)` over samples with `t >= 2`.
    pub alpha: f64,
    /// `sup ω(t) / t`.
    pub beta: f64,
    /// `ω(t) / t` at `t_max`.
    pub beta0_tail_ratio: f64,
    /// Whether `ω(t) / t` decreases along the last quarter of the samples.
    pub beta0_monotone: bool,
    /// `min ω(t) / log t` over the last quarter of the samples.
    pub gamma_tail_min: f64,
    /// `ω(t_max) / log t_max`.
    pub gamma_tail_ratio: f64,
    /// `max (φ(u_i) - (φ(u_{i-1}) + φ(u_{i+1})) / 2)`; positive values
    /// measure failure of convexity of `u ↦ ω(e^u)`.
    pub delta_defect: f64,
}

impl AxiomReport {
    /// `(β₀)` holds empirically: the ratio decreases on the tail.
    pub fn beta0_holds(&self) -> bool {
        self.beta0_monotone
    }
}

pub fn check_weight_axioms(w: &WeightFunction, t_max: f64, samples: usize) -> AxiomReport {
    let n = samples.max(8);
    let ln_max = libm::log(t_max.max(10.0));
    let ts: Vec<f64> = (0..n).map(|i| libm::exp(ln_max * i as f64 / (n - 1) as f64)).collect();
    let tail = &ts[(3 * n) / 4..];

    let mut alpha: f64 = 0.0;
    let mut beta: f64 = 0.0;
    for &t in &ts {
        let o = w.omega(t);
        if t >= 2.0 && o > 0.0 {
            alpha = alpha.max(w.omega(2.0 * t) / o);
        }
        beta = beta.max(o / t);
    }
    let ratios: Vec<f64> = tail.iter().map(|t| w.omega(*t) / t).collect();
    let beta0_monotone = ratios.windows(2).all(|p| p[1] <= p[0]);
    let gamma_tail_min = tail
        .iter()
        .map(|t| w.omega(*t) / libm::log(*t))
        .fold(f64::INFINITY, f64::min);
    let t_last = ts[n - 1];

    let du = ln_max / (n - 1) as f64;
    let mut delta_defect = f64::NEG_INFINITY;
    for i in 1..n - 1 {
        let u = i as f64 * du;
        let mid = 0.5 * (w.phi(u - du) + w.phi(u + du));
        delta_defect = delta_defect.max(w.phi(u) - mid);
    }

    AxiomReport {
        alpha,
        beta,
        beta0_tail_ratio: w.omega(t_last) / t_last,
        beta0_monotone,
        gamma_tail_min,
        gamma_tail_ratio: w.omega(t_last) / libm::log(t_last),
        delta_defect,
    }
}

/// A pair `(h', C)` for which
/// `(1/h) ω(t) <= sup_k [k log t - (1/h') φ*(k h')] + log C` on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoungWitness {
    pub h_prime: f64,
    pub c: f64,
    /// Largest value of left side minus right side over the grid.
    pub max_defect: f64,
}

const SWEEP_FACTOR: f64 = 0.9;
const SWEEP_STEPS: usize = 80;
const MAX_K: usize = 100_000;

/// Sweeps `h' = h · 0.9^i`. For each candidate the constant `log C >= 0`
/// is fitted on the lower part of the grid (`t <= √(t_min t_max)`) and the
/// defect is measured on the whole grid, so success certifies that the
/// inequality extends beyond the fitting range.
pub fn young_inequality_witness(w: &WeightFunction, h: f64, t_grid: &[f64]) -> Result<YoungWitness> {
    check_h(h)?;
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t >= 1.0) || !t.is_finite()) {
        return Err(Error::Domain("t_grid must be a nonempty list of finite reals >= 1".into()));
    }
    let t_min = t_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let t_max = t_grid.iter().copied().fold(0.0, f64::max);
    let split = libm::sqrt(t_min * t_max);
    let mut best_defect = f64::INFINITY;
    for i in 1..=SWEEP_STEPS {
        let hp = h * libm::pow(SWEEP_FACTOR, i as f64);
        let mut conj: Vec<f64> = Vec::new();
        let gaps: Vec<f64> = t_grid
            .iter()
            .map(|&t| w.omega(t) / h - conjugate_envelope(w, hp, t, &mut conj))
            .collect();
        let log_c = gaps
            .iter()
            .zip(t_grid)
            .filter(|(_, t)| **t <= split)
            .map(|(g, _)| *g)
            .fold(0.0, f64::max)
            + 1e-12;
        let defect = gaps.iter().map(|g| g - log_c).fold(f64::NEG_INFINITY, f64::max);
        if defect <= 0.0 {
            return Ok(YoungWitness { h_prime: hp, c: libm::exp(log_c), max_defect: defect });
        }
        best_defect = best_defect.min(defect);
    }
    Err(Error::SearchFailure { best_defect })
}

/// `sup_{k >= 0} [k log t - (1/h') φ*(k h')]`, skipping infinite conjugate
/// values. The sequence is concave in `k`, so the scan stops after the
/// first few decreases. `cache[k]` memoizes `(1/h') φ*(k h')`.
fn conjugate_envelope(w: &WeightFunction, hp: f64, t: f64, cache: &mut Vec<f64>) -> f64 {
    let lt = libm::log(t);
    let mut best = f64::NEG_INFINITY;
    let mut prev = f64::NEG_INFINITY;
    let mut drops = 0;
    for k in 0..MAX_K {
        if cache.len() <= k {
            // k * 1.0 as the argument, conjugate scaled by 1/h'
            let v = w.young_conjugate(hp, k as f64).unwrap_or(f64::INFINITY);
            cache.push(v);
        }
        let c = cache[k];
        if c.is_infinite() {
            break;
        }
        let term = k as f64 * lt - c;
        best = best.max(term);
        if term < prev {
            drops += 1;
            if drops >= 3 {
                break;
            }
        } else {
            drops = 0;
        }
        prev = term;
    }
    best
}
