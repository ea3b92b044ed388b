use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// ZYZ Euler angles: `x = e^{α X_z} e^{β X_y} e^{γ X_z}` with
/// `α ∈ [0, 2π)`, `β ∈ [0, π]`, `γ ∈ [0, 4π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerZyz {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerZyz {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let e = EulerZyz { alpha, beta, gamma };
        e.validate()?;
        Ok(e)
    }

    /// Only `β` is range-checked; `α` and `γ` may be any finite reals.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.gamma.is_finite()) {
            return Err(Error::Domain(format!("non-finite Euler angles {self:?}")));
        }
        if !(0.0..=PI).contains(&self.beta) {
            return Err(Error::Domain(format!("beta = {} outside [0, π]", self.beta)));
        }
        Ok(())
    }
}

/// Unit quaternion form `U = [[a, -b̄], [b, ā]]`, `|a|² + |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2 {
    pub a: Complex64,
    pub b: Complex64,
}

impl Su2 {
    pub fn identity() -> Self {
        Su2 { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0) }
    }

    pub fn from_euler(e: &EulerZyz) -> Result<Self> {
        e.validate()?;
        let (s, c) = (libm::sin(e.beta / 2.0), libm::cos(e.beta / 2.0));
        Ok(Su2 {
            a: Complex64::from_polar(c, -(e.alpha + e.gamma) / 2.0),
            b: Complex64::from_polar(s, (e.alpha - e.gamma) / 2.0),
        })
    }

    pub fn to_euler(&self) -> EulerZyz {
        let (ra, rb) = (self.a.norm(), self.b.norm());
        let beta = 2.0 * libm::atan2(rb, ra);
        let (pa, pb) = (self.a.arg(), self.b.arg());
        let (mut alpha, mut gamma) = if rb < 1e-15 {
            (0.0, -2.0 * pa)
        } else if ra < 1e-15 {
            (0.0, -2.0 * pb)
        } else {
            (pb - pa, -pa - pb)
        };
        // shifting α and γ together by 2π leaves (a, b) unchanged
        let n = libm::floor(alpha / (2.0 * PI));
        alpha -= 2.0 * PI * n;
        gamma -= 2.0 * PI * n;
        if alpha >= 2.0 * PI {
            alpha -= 2.0 * PI;
            gamma -= 2.0 * PI;
        }
        gamma -= 4.0 * PI * libm::floor(gamma / (4.0 * PI));
        if gamma >= 4.0 * PI {
            gamma -= 4.0 * PI;
        }
        EulerZyz { alpha, beta: beta.clamp(0.0, PI), gamma }
    }

    pub fn mul(&self, o: &Su2) -> Su2 {
        Su2 { a: self.a * o.a - self.b.conj() * o.b, b: self.b * o.a + self.a.conj() * o.b }
    }

    pub fn inverse(&self) -> Su2 {
        Su2 { a: self.a.conj(), b: -self.b }
    }

    /// One-parameter subgroups `exp(t X_k)` for the orthonormal basis
    /// `X_k = -i σ_k / 2`, `k ∈ {0: x, 1: y, 2: z}`.
    pub fn exp_basis(k: usize, t: f64) -> Su2 {
        let (s, c) = (libm::sin(t / 2.0), libm::cos(t / 2.0));
        match k {
            0 => Su2 { a: Complex64::new(c, 0.0), b: Complex64::new(0.0, -s) },
            1 => Su2 { a: Complex64::new(c, 0.0), b: Complex64::new(s, 0.0) },
            _ => Su2 { a: Complex64::new(c, -s), b: Complex64::new(0.0, 0.0) },
        }
    }

    /// Row-major `2×2` matrix.
    pub fn matrix(&self) -> Vec<Complex64> {
        vec![self.a, -self.b.conj(), self.b, self.a.conj()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hs_distance, matmul};

    fn close(p: &Su2, q: &Su2) -> bool {
        (p.a - q.a).norm() < 1e-12 && (p.b - q.b).norm() < 1e-12
    }

    #[test]
    fn euler_roundtrip() {
        for &(al, be, ga) in &[(0.3, 1.2, 3.7), (6.1, 0.0, 1.0), (2.0, PI, 11.0), (5.0, 2.2, 0.1)] {
            let q = Su2::from_euler(&EulerZyz { alpha: al, beta: be, gamma: ga }).unwrap();
            let e = q.to_euler();
            assert!((0.0..2.0 * PI).contains(&e.alpha));
            assert!((0.0..4.0 * PI).contains(&e.gamma));
            assert!(close(&Su2::from_euler(&e).unwrap(), &q));
        }
    }

    #[test]
    fn product_matches_matrices() {
        let p = Su2::from_euler(&EulerZyz { alpha: 0.3, beta: 1.2, gamma: 3.7 }).unwrap();
        let q = Su2::from_euler(&EulerZyz { alpha: 4.3, beta: 2.2, gamma: 0.7 }).unwrap();
        let pq = p.mul(&q);
        assert!(hs_distance(&pq.matrix(), &matmul(&p.matrix(), &q.matrix(), 2)) < 1e-14);
        assert!(close(&p.mul(&p.inverse()), &Su2::identity()));
    }

    #[test]
    fn euler_factorization_uses_basis_flows() {
        let e = EulerZyz { alpha: 0.9, beta: 1.7, gamma: 2.6 };
        let prod = Su2::exp_basis(2, e.alpha).mul(&Su2::exp_basis(1, e.beta)).mul(&Su2::exp_basis(2, e.gamma));
        assert!(close(&prod, &Su2::from_euler(&e).unwrap()));
    }
}
