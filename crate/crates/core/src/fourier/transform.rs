use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::{FourierCoefficients, GridFunction, ZERO};
use crate::error::{Error, Result};
use crate::group::{matrix_coefficients, GridLayout, GroupElement, QuadratureGrid};

/// `e^{2πi k / n}` for `k = 0..n`.
fn roots(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect()
}

fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// `F f(ξ) = Σ_x w(x) f(x) ξ(x)` for every `ξ` of band limit `<= bandlimit`.
pub fn forward(f: &GridFunction, bandlimit: usize) -> Result<FourierCoefficients> {
    let grid = f.grid();
    if bandlimit > grid.bandlimit {
        return Err(Error::Precondition(format!(
            "grid is exact to band limit {}, transform requested at {bandlimit}",
            grid.bandlimit
        )));
    }
    let m = f.value_dim();
    let mut out = FourierCoefficients::zeros(grid.kind, bandlimit, m);
    for c in 0..m {
        let slice: Vec<Complex64> = f.values().iter().skip(c).step_by(m).copied().collect();
        let blocks = match grid.layout {
            GridLayout::Torus1 { n } => torus1_forward(&slice, &grid.weights, n, bandlimit),
            GridLayout::Torus2 { n } => torus2_forward(&slice, grid.weights[0], n, bandlimit),
            GridLayout::Su2 { n_alpha, n_beta, n_gamma } => {
                su2_forward(grid, &slice, n_alpha, n_beta, n_gamma, bandlimit)
            }
        };
        for (i, b) in blocks.into_iter().enumerate() {
            let d2 = b.len();
            out.blocks[i][c * d2..(c + 1) * d2].copy_from_slice(&b);
        }
    }
    Ok(out)
}

/// Synthesis on the default grid for the coefficients' band limit.
pub fn inverse(t: &FourierCoefficients) -> GridFunction {
    let grid = Arc::new(QuadratureGrid::new(t.kind(), t.bandlimit()));
    inverse_on(t, &grid).expect("grid built for this band limit")
}

/// `f(x) = Σ_ξ d_ξ Tr[ξ(x)* T_ξ]` at every node of `grid`, slice by slice.
pub fn inverse_on(t: &FourierCoefficients, grid: &Arc<QuadratureGrid>) -> Result<GridFunction> {
    if grid.kind != t.kind() {
        return Err(Error::Precondition(format!("coefficients on {} cannot be synthesized on {}", t.kind(), grid.kind)));
    }
    if t.bandlimit() > grid.bandlimit {
        return Err(Error::Precondition(format!(
            "coefficients of band limit {} exceed the grid's {}",
            t.bandlimit(),
            grid.bandlimit
        )));
    }
    let m = t.value_dim();
    let mut values = vec![ZERO; grid.len() * m];
    for c in 0..m {
        let blocks: Vec<&[Complex64]> = (0..t.dual().len()).map(|i| t.slice(i, c)).collect();
        let slice = match grid.layout {
            GridLayout::Torus1 { n } => torus1_inverse(&blocks, n, t.bandlimit()),
            GridLayout::Torus2 { n } => torus2_inverse(&blocks, n, t.bandlimit()),
            GridLayout::Su2 { n_alpha, n_beta, n_gamma } => {
                su2_inverse(grid, &blocks, n_alpha, n_beta, n_gamma, t.bandlimit())
            }
        };
        for (i, v) in slice.into_iter().enumerate() {
            values[i * m + c] = v;
        }
    }
    GridFunction::new(grid.clone(), m, values)
}

/// Synthesis at a single point.
pub fn evaluate(t: &FourierCoefficients, x: &GroupElement) -> Result<Vec<Complex64>> {
    let m = t.value_dim();
    let mut out = vec![ZERO; m];
    for (i, xi) in t.dual().iter().enumerate() {
        let u = matrix_coefficients(xi, x)?;
        for (c, acc) in out.iter_mut().enumerate() {
            *acc += trace_adjoint_product(&u, t.slice(i, c)) * xi.dim as f64;
        }
    }
    Ok(out)
}

/// `Tr[A* B] = Σ conj(a_ij) b_ij`.
pub(crate) fn trace_adjoint_product(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn torus1_forward(f: &[Complex64], w: &[f64], n: usize, bl: usize) -> Vec<Vec<Complex64>> {
    let tw = roots(n);
    let l = bl as i64;
    (-l..=l)
        .map(|k| {
            let s: Complex64 = f.iter().enumerate().map(|(j, v)| v * tw[wrap(k * j as i64, n)] * w[j]).sum();
            vec![s]
        })
        .collect()
}

fn torus1_inverse(blocks: &[&[Complex64]], n: usize, bl: usize) -> Vec<Complex64> {
    let tw = roots(n);
    let l = bl as i64;
    (0..n)
        .map(|j| (-l..=l).zip(blocks).map(|(k, b)| b[0] * tw[wrap(-k * j as i64, n)]).sum())
        .collect()
}

fn torus2_forward(f: &[Complex64], w: f64, n: usize, bl: usize) -> Vec<Vec<Complex64>> {
    let tw = roots(n);
    let l = bl as i64;
    let nk = 2 * bl + 1;
    // stage one: transform along the second coordinate
    let mut g = vec![ZERO; n * nk];
    for a in 0..n {
        for (ki, k) in (-l..=l).enumerate() {
            g[a * nk + ki] = (0..n).map(|b| f[a * n + b] * tw[wrap(k * b as i64, n)]).sum();
        }
    }
    let mut out = Vec::with_capacity(nk * nk);
    for k1 in -l..=l {
        for k2i in 0..nk {
            let s: Complex64 = (0..n).map(|a| g[a * nk + k2i] * tw[wrap(k1 * a as i64, n)]).sum();
            out.push(vec![s * w]);
        }
    }
    out
}

fn torus2_inverse(blocks: &[&[Complex64]], n: usize, bl: usize) -> Vec<Complex64> {
    let tw = roots(n);
    let l = bl as i64;
    let nk = 2 * bl + 1;
    let mut h = vec![ZERO; n * nk];
    for a in 0..n {
        for k2i in 0..nk {
            h[a * nk + k2i] = (-l..=l)
                .enumerate()
                .map(|(k1i, k1)| blocks[k1i * nk + k2i][0] * tw[wrap(-k1 * a as i64, n)])
                .sum();
        }
    }
    let mut out = vec![ZERO; n * n];
    for a in 0..n {
        for b in 0..n {
            out[a * n + b] =
                (-l..=l).enumerate().map(|(k2i, k2)| h[a * nk + k2i] * tw[wrap(-k2 * b as i64, n)]).sum();
        }
    }
    out
}

/// Separable forward transform on the Euler grid: sum over `γ`, then `α`,
/// then contract with `d^l(β)`. Twice-`m` values run over `-2L..=2L`.
fn su2_forward(
    grid: &QuadratureGrid,
    f: &[Complex64],
    n_alpha: usize,
    n_beta: usize,
    n_gamma: usize,
    bl: usize,
) -> Vec<Vec<Complex64>> {
    let mmax = 2 * bl as i64;
    let nm = (2 * mmax + 1) as usize;
    let tw_g = roots(n_gamma);
    let tw_a = roots(2 * n_alpha);

    // g1[(a, b), m] = Σ_c f e^{-i m γ_c}, γ_c = 4π c / n_gamma
    let mut g1 = vec![ZERO; n_alpha * n_beta * nm];
    for ab in 0..n_alpha * n_beta {
        let row = &f[ab * n_gamma..(ab + 1) * n_gamma];
        for (mi, m2) in (-mmax..=mmax).enumerate() {
            g1[ab * nm + mi] = row.iter().enumerate().map(|(c, v)| v * tw_g[wrap(-m2 * c as i64, n_gamma)]).sum();
        }
    }
    // g2[b, m', m] = Σ_a g1 e^{-i m' α_a}, α_a = 2π a / n_alpha
    let mut g2 = vec![ZERO; n_beta * nm * nm];
    for b in 0..n_beta {
        for (mpi, mp2) in (-mmax..=mmax).enumerate() {
            for (mi, m2) in (-mmax..=mmax).enumerate() {
                if (mp2 - m2).rem_euclid(2) != 0 {
                    continue;
                }
                g2[(b * nm + mpi) * nm + mi] = (0..n_alpha)
                    .map(|a| g1[(a * n_beta + b) * nm + mi] * tw_a[wrap(-mp2 * a as i64, 2 * n_alpha)])
                    .sum();
            }
        }
    }
    let scale = 1.0 / (2.0 * n_alpha as f64 * n_gamma as f64);
    (0..=2 * bl as u32)
        .map(|two_l| {
            let n = two_l as usize + 1;
            let mut block = vec![ZERO; n * n];
            for i in 0..n {
                let mpi = (mmax + two_l as i64 - 2 * i as i64) as usize;
                for j in 0..n {
                    let mi = (mmax + two_l as i64 - 2 * j as i64) as usize;
                    let mut s = ZERO;
                    for b in 0..n_beta {
                        let d = grid.small_d[b][two_l as usize][i * n + j];
                        s += g2[(b * nm + mpi) * nm + mi] * (d * grid.beta_weights[b]);
                    }
                    block[i * n + j] = s * scale;
                }
            }
            block
        })
        .collect()
}

fn su2_inverse(
    grid: &QuadratureGrid,
    blocks: &[&[Complex64]],
    n_alpha: usize,
    n_beta: usize,
    n_gamma: usize,
    bl: usize,
) -> Vec<Complex64> {
    let mmax = 2 * bl as i64;
    let nm = (2 * mmax + 1) as usize;
    let tw_g = roots(n_gamma);
    let tw_a = roots(2 * n_alpha);

    // k[b, m', m] = Σ_l (2l + 1) d^l_{m'm}(β_b) T^l_{m'm}
    let mut k = vec![ZERO; n_beta * nm * nm];
    for (two_l, block) in blocks.iter().enumerate() {
        let n = two_l + 1;
        for i in 0..n {
            let mpi = (mmax + two_l as i64 - 2 * i as i64) as usize;
            for j in 0..n {
                let mi = (mmax + two_l as i64 - 2 * j as i64) as usize;
                let t = block[i * n + j] * n as f64;
                if t == ZERO {
                    continue;
                }
                for b in 0..n_beta {
                    k[(b * nm + mpi) * nm + mi] += t * grid.small_d[b][two_l][i * n + j];
                }
            }
        }
    }
    // h[(a, b), m] = Σ_{m'} e^{i m' α_a} k[b, m', m]
    let mut h = vec![ZERO; n_alpha * n_beta * nm];
    for a in 0..n_alpha {
        for b in 0..n_beta {
            for (mi, m2) in (-mmax..=mmax).enumerate() {
                let mut s = ZERO;
                for (mpi, mp2) in (-mmax..=mmax).enumerate() {
                    if (mp2 - m2).rem_euclid(2) != 0 {
                        continue;
                    }
                    s += k[(b * nm + mpi) * nm + mi] * tw_a[wrap(mp2 * a as i64, 2 * n_alpha)];
                }
                h[(a * n_beta + b) * nm + mi] = s;
            }
        }
    }
    let mut out = vec![ZERO; n_alpha * n_beta * n_gamma];
    for ab in 0..n_alpha * n_beta {
        let hrow = &h[ab * nm..(ab + 1) * nm];
        for c in 0..n_gamma {
            out[ab * n_gamma + c] = (-mmax..=mmax)
                .zip(hrow)
                .map(|(m2, v)| v * tw_g[wrap(m2 * c as i64, n_gamma)])
                .sum();
        }
    }
    out
}

/// Direct `O(grid × dual)` forward transform from matrix coefficients.
#[cfg(test)]
pub(crate) fn forward_direct(f: &GridFunction, bandlimit: usize) -> FourierCoefficients {
    let grid = f.grid();
    let m = f.value_dim();
    let mut out = FourierCoefficients::zeros(grid.kind, bandlimit, m);
    let dual = out.dual().to_vec();
    for (node, x) in grid.nodes.iter().enumerate() {
        let w = grid.weights[node];
        for (i, xi) in dual.iter().enumerate() {
            let u = matrix_coefficients(xi, x).unwrap();
            let d2 = xi.dim * xi.dim;
            for c in 0..m {
                let v = f.value(node)[c] * w;
                for e in 0..d2 {
                    out.blocks[i][c * d2 + e] += u[e] * v;
                }
            }
        }
    }
    out
}
