//! The concrete compact groups `T^1`, `T^2` and `SU(2)`: unitary duals,
//! matrix coefficients, group law and Haar quadrature.
//!
//! Metric normalisation: the Casimir eigenvalue is `|k|^2` on the tori
//! (period-`2π` coordinates) and `l(l+1)` on `SU(2)`, where the
//! orthonormal Lie algebra basis is `X_k = -i σ_k / 2`.

mod quadrature;
mod su2;
mod wigner;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use quadrature::{haar_quadrature, GridLayout, QuadratureGrid};
pub use su2::{EulerZyz, Su2};
pub use wigner::{wigner_small_d, wigner_small_d_all};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Torus1,
    Torus2,
    Su2,
}

impl GroupKind {
    /// Real dimension of the group manifold.
    pub fn dimension(self) -> usize {
        match self {
            GroupKind::Torus1 => 1,
            GroupKind::Torus2 => 2,
            GroupKind::Su2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Torus1 => "t1",
            GroupKind::Torus2 => "t2",
            GroupKind::Su2 => "su2",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "t1" => Ok(GroupKind::Torus1),
            "t2" => Ok(GroupKind::Torus2),
            "su2" => Ok(GroupKind::Su2),
            other => Err(Error::Domain(format!("unknown group {other:?} (expected t1, t2 or su2)"))),
        }
    }
}

/// Label of an irreducible unitary representation. `SU(2)` labels are the
/// twice-spin `2l`, so every label is an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualLabel {
    Torus1(i64),
    Torus2(i64, i64),
    Su2(u32),
}

impl fmt::Display for DualLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualLabel::Torus1(k) => write!(f, "k={k}"),
            DualLabel::Torus2(a, b) => write!(f, "k=({a},{b})"),
            DualLabel::Su2(two_l) => write!(f, "2l={two_l}"),
        }
    }
}

/// Inverse of the `Display` form: `k=3`, `k=(1,-2)` or `2l=3`.
impl FromStr for DualLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed dual label {s:?}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("2l=") {
            return rest.parse().map(DualLabel::Su2).map_err(|_| bad());
        }
        let rest = s.strip_prefix("k=").ok_or_else(bad)?;
        match rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(pair) => {
                let (a, b) = pair.split_once(',').ok_or_else(bad)?;
                Ok(DualLabel::Torus2(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
            }
            None => rest.parse().map(DualLabel::Torus1).map_err(|_| bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualIndex {
    pub label: DualLabel,
    /// Dimension `d_ξ` of the representation space.
    pub dim: usize,
    /// Casimir eigenvalue `λ_ξ >= 0`, so that `Δ ξ_ij = -λ_ξ ξ_ij`.
    pub casimir: f64,
}

impl DualIndex {
    pub fn from_label(label: DualLabel) -> Self {
        match label {
            DualLabel::Torus1(k) => DualIndex { label, dim: 1, casimir: (k * k) as f64 },
            DualLabel::Torus2(a, b) => {
                DualIndex { label, dim: 1, casimir: (a * a + b * b) as f64 }
            }
            DualLabel::Su2(two_l) => {
                let l = two_l as f64 / 2.0;
                DualIndex { label, dim: two_l as usize + 1, casimir: l * (l + 1.0) }
            }
        }
    }

    pub fn kind(&self) -> GroupKind {
        match self.label {
            DualLabel::Torus1(_) => GroupKind::Torus1,
            DualLabel::Torus2(..) => GroupKind::Torus2,
            DualLabel::Su2(_) => GroupKind::Su2,
        }
    }

    /// `√λ_ξ`, the argument at which weights are evaluated.
    pub fn sqrt_casimir(&self) -> f64 {
        libm::sqrt(self.casimir)
    }

    pub fn is_trivial(&self) -> bool {
        self.casimir == 0.0
    }

    /// Smallest band limit containing this index.
    pub fn bandlimit(&self) -> usize {
        match self.label {
            DualLabel::Torus1(k) => k.unsigned_abs() as usize,
            DualLabel::Torus2(a, b) => a.unsigned_abs().max(b.unsigned_abs()) as usize,
            DualLabel::Su2(two_l) => (two_l as usize).div_ceil(2),
        }
    }
}

/// The truncated unitary dual: `|k_i| <= L` on the tori, `2l <= 2L` on `SU(2)`.
pub fn enumerate_dual(kind: GroupKind, bandlimit: usize) -> Vec<DualIndex> {
    let l = bandlimit as i64;
    match kind {
        GroupKind::Torus1 => (-l..=l).map(|k| DualIndex::from_label(DualLabel::Torus1(k))).collect(),
        GroupKind::Torus2 => (-l..=l)
            .flat_map(|a| (-l..=l).map(move |b| DualIndex::from_label(DualLabel::Torus2(a, b))))
            .collect(),
        GroupKind::Su2 => (0..=2 * bandlimit as u32)
            .map(|two_l| DualIndex::from_label(DualLabel::Su2(two_l)))
            .collect(),
    }
}

/// Position of `label` in the ordering produced by [`enumerate_dual`].
pub fn dual_position(kind: GroupKind, bandlimit: usize, label: DualLabel) -> Option<usize> {
    let l = bandlimit as i64;
    match (kind, label) {
        (GroupKind::Torus1, DualLabel::Torus1(k)) if k.abs() <= l => Some((k + l) as usize),
        (GroupKind::Torus2, DualLabel::Torus2(a, b)) if a.abs() <= l && b.abs() <= l => {
            Some(((a + l) * (2 * l + 1) + (b + l)) as usize)
        }
        (GroupKind::Su2, DualLabel::Su2(two_l)) if two_l as usize <= 2 * bandlimit => {
            Some(two_l as usize)
        }
        _ => None,
    }
}

/// A point of one of the supported groups in its coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupElement {
    Torus1(f64),
    Torus2([f64; 2]),
    Su2(EulerZyz),
}

impl GroupElement {
    pub fn identity(kind: GroupKind) -> Self {
        match kind {
            GroupKind::Torus1 => GroupElement::Torus1(0.0),
            GroupKind::Torus2 => GroupElement::Torus2([0.0, 0.0]),
            GroupKind::Su2 => GroupElement::Su2(EulerZyz { alpha: 0.0, beta: 0.0, gamma: 0.0 }),
        }
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            GroupElement::Torus1(_) => GroupKind::Torus1,
            GroupElement::Torus2(_) => GroupKind::Torus2,
            GroupElement::Su2(_) => GroupKind::Su2,
        }
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Torus1(a), GroupElement::Torus1(b)) => {
                Ok(GroupElement::Torus1(wrap_angle(a + b)))
            }
            (GroupElement::Torus2(a), GroupElement::Torus2(b)) => Ok(GroupElement::Torus2([
                wrap_angle(a[0] + b[0]),
                wrap_angle(a[1] + b[1]),
            ])),
            (GroupElement::Su2(a), GroupElement::Su2(b)) => {
                let q = Su2::from_euler(a)?.mul(&Su2::from_euler(b)?);
                Ok(GroupElement::Su2(q.to_euler()))
            }
            _ => Err(Error::Domain(format!(
                "cannot compose elements of {} and {}",
                self.kind(),
                other.kind()
            ))),
        }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        match self {
            GroupElement::Torus1(a) => Ok(GroupElement::Torus1(wrap_angle(-a))),
            GroupElement::Torus2(a) => {
                Ok(GroupElement::Torus2([wrap_angle(-a[0]), wrap_angle(-a[1])]))
            }
            GroupElement::Su2(e) => Ok(GroupElement::Su2(Su2::from_euler(e)?.inverse().to_euler())),
        }
    }
}

/// Reduce an angle to `[0, 2π)`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let r = a - 2.0 * PI * libm::floor(a / (2.0 * PI));
    if r >= 2.0 * PI { 0.0 } else { r }
}

/// The unitary matrix `ξ(x)` (row-major, `d_ξ × d_ξ`).
///
/// Tori: the `1×1` matrix `e^{i k·x}`. `SU(2)`: the Wigner matrix
/// `D^l_{m'm}(α, β, γ) = e^{-i m' α} d^l_{m'm}(β) e^{-i m γ}` with rows and
/// columns ordered `m = l, l-1, ..., -l`, so that `D^{1/2}` is the defining
/// representation.
pub fn matrix_coefficients(xi: &DualIndex, x: &GroupElement) -> Result<Vec<Complex64>> {
    match (xi.label, x) {
        (DualLabel::Torus1(k), GroupElement::Torus1(a)) => {
            check_finite(&[*a])?;
            Ok(vec![Complex64::from_polar(1.0, k as f64 * a)])
        }
        (DualLabel::Torus2(k1, k2), GroupElement::Torus2(a)) => {
            check_finite(a)?;
            Ok(vec![Complex64::from_polar(1.0, k1 as f64 * a[0] + k2 as f64 * a[1])])
        }
        (DualLabel::Su2(two_l), GroupElement::Su2(e)) => {
            e.validate()?;
            let d = wigner_small_d(two_l, e.beta);
            Ok(wigner_big_d(two_l, e, &d))
        }
        _ => Err(Error::Domain(format!(
            "representation {} does not belong to group {}",
            xi.label,
            x.kind()
        ))),
    }
}

/// `D^l(α, β, γ)` from a precomputed `d^l(β)`.
pub fn wigner_big_d(two_l: u32, e: &EulerZyz, small_d: &[f64]) -> Vec<Complex64> {
    let n = two_l as usize + 1;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let mp = (two_l as f64 - 2.0 * i as f64) / 2.0;
        for j in 0..n {
            let m = (two_l as f64 - 2.0 * j as f64) / 2.0;
            out.push(Complex64::from_polar(small_d[i * n + j], -mp * e.alpha - m * e.gamma));
        }
    }
    out
}

fn check_finite(a: &[f64]) -> Result<()> {
    if a.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite coordinates {a:?}")))
    }
}

/// Partial sums `S(L') = Σ_{ξ within band L'} d_ξ² (1 + λ_ξ)^{-α}` for
/// `L' = 1..=L`. The full series converges iff `α > n/2`.
pub fn weyl_summability(kind: GroupKind, alpha: f64, bandlimit: usize) -> Vec<(usize, f64)> {
    let term = |xi: &DualIndex| (xi.dim * xi.dim) as f64 * libm::pow(1.0 + xi.casimir, -alpha);
    let mut out = Vec::with_capacity(bandlimit);
    let mut sum: f64 = enumerate_dual(kind, 0).iter().map(term).sum();
    for band in 1..=bandlimit {
        // new shell: indices with bandlimit() == band
        sum += enumerate_dual(kind, band)
            .iter()
            .filter(|xi| xi.bandlimit() == band)
            .map(term)
            .sum::<f64>();
        out.push((band, sum));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{adjoint, hs_distance, identity, matmul};

    #[test]
    fn dual_enumeration() {
        let t1 = enumerate_dual(GroupKind::Torus1, 2);
        assert_eq!(t1.len(), 5);
        assert_eq!(t1[0].label, DualLabel::Torus1(-2));
        assert!(t1.iter().all(|xi| xi.dim == 1));
        assert_eq!(t1.iter().map(|xi| xi.casimir).collect::<Vec<_>>(), [4.0, 1.0, 0.0, 1.0, 4.0]);

        let su2 = enumerate_dual(GroupKind::Su2, 1);
        assert_eq!(su2.iter().map(|xi| xi.dim).collect::<Vec<_>>(), [1, 2, 3]);
        assert_eq!(su2.iter().map(|xi| xi.casimir).collect::<Vec<_>>(), [0.0, 0.75, 2.0]);

        let t2 = enumerate_dual(GroupKind::Torus2, 1);
        assert_eq!(t2.len(), 9);
        let mut lambdas: Vec<f64> = t2.iter().map(|xi| xi.casimir).collect();
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup();
        assert_eq!(lambdas, [0.0, 1.0, 2.0]);
    }

    #[test]
    fn dual_positions_match_enumeration() {
        for kind in [GroupKind::Torus1, GroupKind::Torus2, GroupKind::Su2] {
            for (i, xi) in enumerate_dual(kind, 3).iter().enumerate() {
                assert_eq!(dual_position(kind, 3, xi.label), Some(i));
            }
        }
        assert_eq!(dual_position(GroupKind::Torus1, 3, DualLabel::Torus1(4)), None);
    }

    #[test]
    fn identity_maps_to_identity_matrix() {
        for kind in [GroupKind::Torus1, GroupKind::Torus2, GroupKind::Su2] {
            let e = GroupElement::identity(kind);
            for xi in enumerate_dual(kind, 3) {
                let m = matrix_coefficients(&xi, &e).unwrap();
                assert!(hs_distance(&m, &identity(xi.dim)) < 1e-14);
            }
        }
    }

    #[test]
    fn spin_half_is_defining_representation() {
        let e = EulerZyz { alpha: 0.7, beta: 1.1, gamma: 2.9 };
        let q = Su2::from_euler(&e).unwrap();
        let d = matrix_coefficients(&DualIndex::from_label(DualLabel::Su2(1)), &GroupElement::Su2(e))
            .unwrap();
        let u = q.matrix();
        assert!(hs_distance(&d, &u) < 1e-14);
    }

    #[test]
    fn rejects_bad_coordinates() {
        let xi = DualIndex::from_label(DualLabel::Su2(2));
        let bad = GroupElement::Su2(EulerZyz { alpha: 0.0, beta: 3.5, gamma: 0.0 });
        assert!(matches!(matrix_coefficients(&xi, &bad), Err(Error::Domain(_))));
        let wrong_group = GroupElement::Torus1(0.3);
        assert!(matrix_coefficients(&xi, &wrong_group).is_err());
    }

    #[test]
    fn unitarity_and_homomorphism_su2() {
        let x = GroupElement::Su2(EulerZyz { alpha: 1.3, beta: 0.4, gamma: 5.1 });
        let y = GroupElement::Su2(EulerZyz { alpha: 4.0, beta: 2.7, gamma: 0.2 });
        let xy = x.compose(&y).unwrap();
        for xi in enumerate_dual(GroupKind::Su2, 6) {
            let dx = matrix_coefficients(&xi, &x).unwrap();
            let dy = matrix_coefficients(&xi, &y).unwrap();
            let dxy = matrix_coefficients(&xi, &xy).unwrap();
            let uu = matmul(&dx, &adjoint(&dx, xi.dim), xi.dim);
            assert!(hs_distance(&uu, &identity(xi.dim)) < 1e-12);
            assert!(hs_distance(&dxy, &matmul(&dx, &dy, xi.dim)) < 1e-10, "{}", xi.label);
        }
    }

    #[test]
    fn inverse_element() {
        let x = GroupElement::Su2(EulerZyz { alpha: 1.3, beta: 0.4, gamma: 5.1 });
        let e = x.compose(&x.inverse().unwrap()).unwrap();
        for xi in enumerate_dual(GroupKind::Su2, 3) {
            let m = matrix_coefficients(&xi, &e).unwrap();
            assert!(hs_distance(&m, &identity(xi.dim)) < 1e-12);
        }
        let t = GroupElement::Torus2([1.0, 6.0]);
        let z = t.compose(&t.inverse().unwrap()).unwrap();
        match z {
            GroupElement::Torus2(a) => assert!(a.iter().all(|v| *v < 1e-12 || *v > 2.0 * PI - 1e-12)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn weyl_partial_sums_torus_converge() {
        let table = weyl_summability(GroupKind::Torus1, 1.0, 400);
        // Σ_k (1+k²)^{-1} = π coth π
        let exact = PI / libm::tanh(PI);
        let last = table.last().unwrap().1;
        assert!((last - exact).abs() < 2.0 / 400.0 + 1e-9);
        assert!(table.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn labels_parse_back() {
        for l in [DualLabel::Torus1(-3), DualLabel::Torus2(1, -2), DualLabel::Su2(5)] {
            assert_eq!(l.to_string().parse::<DualLabel>().unwrap(), l);
        }
        assert!("k=(1)".parse::<DualLabel>().is_err());
        assert!("2l=-1".parse::<DualLabel>().is_err());
        assert_eq!("su2".parse::<GroupKind>().unwrap(), GroupKind::Su2);
        assert!("so3".parse::<GroupKind>().is_err());
    }
}
