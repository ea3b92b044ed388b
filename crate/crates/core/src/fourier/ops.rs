use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::transform::{forward, inverse_on, trace_adjoint_product};
use super::{GridFunction, ZERO};
use crate::error::{Error, Result};
use crate::group::{wigner_big_d, EulerZyz, GroupElement, GroupKind, QuadratureGrid};
use crate::linalg::matmul;

/// Relative Parseval defect `|‖f‖² - Σ d_ξ ‖F f(ξ)‖²| / max(‖f‖², ε)`,
/// with both sides summed over the `C^m` components.
pub fn parseval_defect(f: &GridFunction) -> f64 {
    let lhs: f64 = f.l2_norms_sq().iter().sum();
    let t = forward(f, f.bandlimit()).expect("transform at the grid's own band limit");
    let rhs: f64 = t.plancherel_sums().iter().sum();
    (lhs - rhs).abs() / lhs.max(f64::MIN_POSITIVE)
}

/// `‖f‖² - Σ_{band ≤ L} d_ξ ‖F f(ξ)‖²`: the `L²` mass a transform at band
/// limit `L` discards, clamped at zero.
pub fn discarded_tail_mass(f: &GridFunction, bandlimit: usize) -> Result<f64> {
    let lhs: f64 = f.l2_norms_sq().iter().sum();
    let t = forward(f, bandlimit)?;
    Ok((lhs - t.plancherel_sums().iter().sum::<f64>()).max(0.0))
}

fn check_scalar(chi: &GridFunction) -> Result<()> {
    if chi.value_dim() != 1 {
        return Err(Error::Unsupported("the left convolution factor must be scalar-valued".into()));
    }
    Ok(())
}

/// `(χ ∗ f)(x) = ∫ χ(y) f(y⁻¹x) dy`, computed as `F χ(ξ) ∘ F f(ξ)` on the
/// truncated dual.
pub fn convolve(chi: &GridFunction, f: &GridFunction) -> Result<GridFunction> {
    check_scalar(chi)?;
    chi.check_same_grid(f)?;
    let bl = f.bandlimit();
    let tc = forward(chi, bl)?;
    let tf = forward(f, bl)?;
    inverse_on(&tf.compose_left(&tc)?, f.grid())
}

/// The same convolution by nested quadrature, quadratic in the grid size.
///
/// On tori `y⁻¹x` is again a node. On `SU(2)` the Euler grid is not a
/// subgroup, so `f(y⁻¹x)` is synthesized from `F f`:
/// `f(y⁻¹x) = Σ d_ξ Tr[ξ(x)* ξ(y) F f(ξ)]`.
pub fn convolve_by_quadrature(chi: &GridFunction, f: &GridFunction) -> Result<GridFunction> {
    check_scalar(chi)?;
    chi.check_same_grid(f)?;
    let grid = f.grid();
    let m = f.value_dim();
    let n = grid.len();
    let mut out = vec![ZERO; n * m];
    match grid.kind {
        GroupKind::Torus1 | GroupKind::Torus2 => {
            for x in 0..n {
                for y in 0..n {
                    let cy = chi.values()[y] * grid.weights[y];
                    let z = grid.difference_node(y, x).expect("torus grids are subgroups");
                    for c in 0..m {
                        out[x * m + c] += cy * f.value(z)[c];
                    }
                }
            }
        }
        GroupKind::Su2 => {
            let tf = forward(f, grid.bandlimit)?;
            let mats = node_matrices(grid);
            // ξ(y) F f(ξ) per node y, dual index and slice
            let shifted: Vec<Vec<Vec<Complex64>>> = mats
                .iter()
                .map(|per_xi| {
                    per_xi
                        .iter()
                        .enumerate()
                        .map(|(i, u)| {
                            let d = tf.dual()[i].dim;
                            (0..m).flat_map(|c| matmul(u, tf.slice(i, c), d)).collect()
                        })
                        .collect()
                })
                .collect();
            for x in 0..n {
                for y in 0..n {
                    let cy = chi.values()[y] * grid.weights[y];
                    if cy == ZERO {
                        continue;
                    }
                    for (i, xi) in tf.dual().iter().enumerate() {
                        let d2 = xi.dim * xi.dim;
                        for c in 0..m {
                            let tr = trace_adjoint_product(&mats[x][i], &shifted[y][i][c * d2..(c + 1) * d2]);
                            out[x * m + c] += cy * tr * xi.dim as f64;
                        }
                    }
                }
            }
        }
    }
    GridFunction::new(grid.clone(), m, out)
}

/// `ξ(x)` at every node for every `ξ` within the grid's band limit.
pub(crate) fn node_matrices(grid: &QuadratureGrid) -> Vec<Vec<Vec<Complex64>>> {
    let (n_beta, n_gamma) = match grid.layout {
        crate::group::GridLayout::Su2 { n_beta, n_gamma, .. } => (n_beta, n_gamma),
        _ => unreachable!("only used on SU(2) grids"),
    };
    grid.nodes
        .iter()
        .enumerate()
        .map(|(node, x)| {
            let b = (node / n_gamma) % n_beta;
            let e: &EulerZyz = match x {
                GroupElement::Su2(e) => e,
                _ => unreachable!(),
            };
            (0..=2 * grid.bandlimit as u32).map(|two_l| wigner_big_d(two_l, e, &grid.small_d[b][two_l as usize])).collect()
        })
        .collect()
}

/// `max_ξ ‖F(χ ∗ f)(ξ) - F χ(ξ) ∘ F f(ξ)‖_HS` with the convolution taken
/// by nested quadrature.
pub fn conv_theorem_defect(chi: &GridFunction, f: &GridFunction) -> Result<f64> {
    let direct = convolve_by_quadrature(chi, f)?;
    let bl = f.bandlimit();
    let lhs = forward(&direct, bl)?;
    let rhs = forward(f, bl)?.compose_left(&forward(chi, bl)?)?;
    lhs.max_hs_distance(&rhs)
}

/// `ψ*(x) = conj(ψ(x⁻¹))`. Tori reindex the grid, which is closed under
/// inversion. On `SU(2)` the value at `x⁻¹` is synthesized from the
/// adjoint coefficients, so the input is taken as band-limited.
pub fn involution(psi: &GridFunction) -> Result<GridFunction> {
    let grid = psi.grid();
    match grid.kind {
        GroupKind::Torus1 | GroupKind::Torus2 => {
            let m = psi.value_dim();
            let mut out = Vec::with_capacity(psi.values().len());
            for i in 0..grid.len() {
                let j = grid.inverse_node(i).expect("torus grids are closed under inversion");
                out.extend(psi.value(j).iter().map(|z| z.conj()));
            }
            GridFunction::new(grid.clone(), m, out)
        }
        GroupKind::Su2 => inverse_on(&forward(psi, grid.bandlimit)?.adjoint(), grid),
    }
}
