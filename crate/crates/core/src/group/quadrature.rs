use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{wigner_small_d_all, EulerZyz, GroupElement, GroupKind};
use crate::linalg::gauss_legendre;

/// Shape of a product quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub enum GridLayout {
    /// `n` uniform nodes `2πj/n` on the circle.
    Torus1 { n: usize },
    /// `n × n` uniform nodes, first coordinate outer.
    Torus2 { n: usize },
    /// Uniform `α` (`n_alpha` nodes on `[0, 2π)`), Gauss-Legendre in
    /// `cos β` (`n_beta` nodes), uniform `γ` (`n_gamma` nodes on `[0, 4π)`).
    /// Node index is `(a * n_beta + b) * n_gamma + c`.
    Su2 { n_alpha: usize, n_beta: usize, n_gamma: usize },
}

/// A normalized Haar quadrature rule, exact on integrands of band limit
/// `2 * bandlimit`, so on products of two functions of band limit
/// `bandlimit`.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub kind: GroupKind,
    pub bandlimit: usize,
    pub layout: GridLayout,
    pub nodes: Vec<GroupElement>,
    pub weights: Vec<f64>,
    /// Su2 only: `β` nodes and their Gauss-Legendre weights (summing to 2).
    pub(crate) betas: Vec<f64>,
    pub(crate) beta_weights: Vec<f64>,
    /// Su2 only: `small_d[b][2l]` is `d^l(β_b)` for `2l <= 2 * bandlimit`.
    pub(crate) small_d: Vec<Vec<Vec<f64>>>,
}

impl QuadratureGrid {
    pub fn new(kind: GroupKind, bandlimit: usize) -> Self {
        match kind {
            GroupKind::Torus1 => {
                let n = 2 * bandlimit + 2;
                let nodes = (0..n).map(|j| GroupElement::Torus1(2.0 * PI * j as f64 / n as f64)).collect();
                Self::flat(kind, bandlimit, GridLayout::Torus1 { n }, nodes, n)
            }
            GroupKind::Torus2 => {
                let n = 2 * bandlimit + 2;
                let step = 2.0 * PI / n as f64;
                let nodes = (0..n * n)
                    .map(|j| GroupElement::Torus2([(j / n) as f64 * step, (j % n) as f64 * step]))
                    .collect();
                Self::flat(kind, bandlimit, GridLayout::Torus2 { n }, nodes, n * n)
            }
            GroupKind::Su2 => Self::su2(bandlimit),
        }
    }

    fn flat(kind: GroupKind, bandlimit: usize, layout: GridLayout, nodes: Vec<GroupElement>, n: usize) -> Self {
        QuadratureGrid {
            kind,
            bandlimit,
            layout,
            nodes,
            weights: alloc::vec![1.0 / n as f64; n],
            betas: Vec::new(),
            beta_weights: Vec::new(),
            small_d: Vec::new(),
        }
    }

    fn su2(bandlimit: usize) -> Self {
        let n_beta = 2 * bandlimit + 2;
        let n_alpha = 2 * n_beta;
        let n_gamma = 2 * n_beta;
        let (xs, ws) = gauss_legendre(n_beta);
        let betas: Vec<f64> = xs.iter().map(|x| libm::acos(*x)).collect();
        let mut nodes = Vec::with_capacity(n_alpha * n_beta * n_gamma);
        let mut weights = Vec::with_capacity(nodes.capacity());
        let norm = 1.0 / (2.0 * n_alpha as f64 * n_gamma as f64);
        for a in 0..n_alpha {
            let alpha = 2.0 * PI * a as f64 / n_alpha as f64;
            for (b, beta) in betas.iter().enumerate() {
                for c in 0..n_gamma {
                    let gamma = 4.0 * PI * c as f64 / n_gamma as f64;
                    nodes.push(GroupElement::Su2(EulerZyz { alpha, beta: *beta, gamma }));
                    weights.push(ws[b] * norm);
                }
            }
        }
        let small_d = betas.iter().map(|b| wigner_small_d_all(2 * bandlimit as u32, *b)).collect();
        QuadratureGrid {
            kind: GroupKind::Su2,
            bandlimit,
            layout: GridLayout::Su2 { n_alpha, n_beta, n_gamma },
            nodes,
            weights,
            betas,
            beta_weights: ws,
            small_d,
        }
    }

    /// Su2 only: the `β` nodes, ascending in `cos β`.
    pub fn beta_nodes(&self) -> &[f64] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node `x⁻¹` when the grid is closed under inversion
    /// (tori only).
    pub fn inverse_node(&self, i: usize) -> Option<usize> {
        match self.layout {
            GridLayout::Torus1 { n } => Some((n - i % n) % n),
            GridLayout::Torus2 { n } => {
                let (a, b) = (i / n, i % n);
                Some(((n - a) % n) * n + (n - b) % n)
            }
            GridLayout::Su2 { .. } => None,
        }
    }

    /// Index of the node `x⁻¹ y` for tori.
    pub(crate) fn difference_node(&self, x: usize, y: usize) -> Option<usize> {
        match self.layout {
            GridLayout::Torus1 { n } => Some((y + n - x) % n),
            GridLayout::Torus2 { n } => {
                let (xa, xb, ya, yb) = (x / n, x % n, y / n, y % n);
                Some(((ya + n - xa) % n) * n + (yb + n - xb) % n)
            }
            GridLayout::Su2 { .. } => None,
        }
    }
}

/// The Haar quadrature rule for `kind` at band limit `bandlimit`.
pub fn haar_quadrature(kind: GroupKind, bandlimit: usize) -> QuadratureGrid {
    QuadratureGrid::new(kind, bandlimit)
}
