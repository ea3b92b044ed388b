use super::*;
use crate::fourier::{convolve, inverse};
use crate::group::{enumerate_dual, EulerZyz};
use crate::classify::{estimate_critical_h, fit_weight_from_decay};
use crate::samples::{heat_coefficients, poisson_coefficients, random_coefficients, random_vector};
use core::f64::consts::PI;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn t1(k: i64) -> DualLabel {
    DualLabel::Torus1(k)
}

fn su2(two_l: u32) -> DualLabel {
    DualLabel::Su2(two_l)
}

fn random_element(kind: GroupKind, seed: u64) -> GroupElement {
    let r = random_vector(3, seed);
    match kind {
        GroupKind::Torus1 => GroupElement::Torus1(PI * r[0].re),
        GroupKind::Torus2 => GroupElement::Torus2([PI * r[0].re, PI * r[1].re]),
        GroupKind::Su2 => GroupElement::Su2(
            EulerZyz::new(PI * (1.0 + r[0].re), PI * 0.5 * (1.0 + r[1].re), 2.0 * PI * (1.0 + r[2].re)).unwrap(),
        ),
    }
}

#[test]
fn rep_is_a_unitary_homomorphism() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(0), su2(1), su2(2), su2(1)]).unwrap();
    let m = rep.dim();
    assert_eq!(m, 1 + 2 + 3 + 2);
    for seed in 0..5 {
        let x = random_element(GroupKind::Su2, seed);
        let y = random_element(GroupKind::Su2, 100 + seed);
        let pxy = rep.matrix(&x.compose(&y).unwrap()).unwrap();
        let prod = matmul(&rep.matrix(&x).unwrap(), &rep.matrix(&y).unwrap(), m);
        assert!(crate::linalg::hs_distance(&pxy, &prod) < 1e-10);
        let px = rep.matrix(&x).unwrap();
        assert!(crate::linalg::hs_distance(&matmul(&px, &adjoint(&px, m), m), &identity(m)) < 1e-10);
    }
}

#[test]
fn rep_rejects_foreign_blocks_and_bad_basis() {
    assert!(matches!(FiniteRep::new(GroupKind::Torus1, &[su2(1)]), Err(Error::Domain(_))));
    let rep = FiniteRep::new(GroupKind::Torus1, &[t1(1), t1(2)]).unwrap();
    assert!(rep.clone().with_basis(vec![c(1.0, 0.0); 4]).is_err());
    let s = 1.0 / libm::sqrt(2.0);
    let hadamard = vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)];
    let rotated = rep.with_basis(hadamard).unwrap();
    let x = random_element(GroupKind::Torus1, 3);
    let y = random_element(GroupKind::Torus1, 4);
    let lhs = rotated.matrix(&x.compose(&y).unwrap()).unwrap();
    let rhs = matmul(&rotated.matrix(&x).unwrap(), &rotated.matrix(&y).unwrap(), 2);
    assert!(crate::linalg::hs_distance(&lhs, &rhs) < 1e-12);
}

#[test]
fn orbit_of_zero_and_trivial_block() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(1)]).unwrap();
    let zero = orbit_map(&rep, &[c(0.0, 0.0); 2]).unwrap();
    assert_eq!(zero.sup_norm(), 0.0);
    let triv = FiniteRep::new(GroupKind::Torus2, &[DualLabel::Torus2(0, 0)]).unwrap();
    let v = [c(0.3, -2.0)];
    let g = orbit_map(&triv, &v).unwrap();
    assert!(g.values().iter().all(|x| (x - v[0]).norm() < 1e-15));
    assert!(matches!(orbit_map(&rep, &[c(1.0, 0.0)]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn torus_orbit_support_matches_sampling() {
    let rep = FiniteRep::new(GroupKind::Torus1, &[t1(1), t1(2)]).unwrap();
    let gamma = orbit_map(&rep, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    for (i, x) in gamma.grid().nodes.iter().enumerate() {
        let GroupElement::Torus1(a) = x else { unreachable!() };
        let v = gamma.value(i);
        assert!((v[0] - Complex64::from_polar(1.0, *a)).norm() < 1e-14);
        assert!((v[1] - Complex64::from_polar(1.0, 2.0 * a)).norm() < 1e-14);
    }
    let t = forward(&gamma, gamma.bandlimit()).unwrap();
    for (i, xi) in t.dual().iter().enumerate() {
        let DualLabel::Torus1(k) = xi.label else { unreachable!() };
        let expect = [if k == -1 { 1.0 } else { 0.0 }, if k == -2 { 1.0 } else { 0.0 }];
        for comp in 0..2 {
            assert!((t.slice(i, comp)[0] - c(expect[comp], 0.0)).norm() < 1e-13, "k = {k}");
        }
    }
}

#[test]
fn constant_chi_projects_onto_trivial_blocks() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(0), su2(1), su2(0)]).unwrap();
    let grid = Arc::new(haar_quadrature(GroupKind::Su2, 2));
    let one = GridFunction::constant(grid, &[c(1.0, 0.0)]);
    let v = random_vector(4, 5);
    let pv = induced_action(&rep, &one, &v).unwrap();
    let expect = [v[0], c(0.0, 0.0), c(0.0, 0.0), v[3]];
    for (a, b) in pv.iter().zip(expect) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn induced_block_equals_fourier_coefficient() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(2)]).unwrap();
    let grid = Arc::new(haar_quadrature(GroupKind::Su2, 3));
    let chi = inverse_on(&random_coefficients(GroupKind::Su2, 3, 1, 9), &grid).unwrap();
    let op = induced_operator(&rep, &chi).unwrap();
    let t = forward(&chi, 3).unwrap();
    let blk = t.block_for(su2(2)).unwrap();
    assert!(crate::linalg::hs_distance(&op, blk) < 1e-10);
}

#[test]
fn induced_action_is_multiplicative() {
    for kind in [GroupKind::Torus1, GroupKind::Su2] {
        let labels: Vec<DualLabel> = match kind {
            GroupKind::Torus1 => vec![t1(-1), t1(0), t1(2)],
            _ => vec![su2(0), su2(1), su2(2)],
        };
        let rep = FiniteRep::new(kind, &labels).unwrap();
        let grid = Arc::new(haar_quadrature(kind, rep.bandlimit()));
        let bl = rep.bandlimit();
        let a = inverse_on(&random_coefficients(kind, bl, 1, 1), &grid).unwrap();
        let b = inverse_on(&random_coefficients(kind, bl, 1, 2), &grid).unwrap();
        let ab = convolve(&a, &b).unwrap();
        let v = random_vector(rep.dim(), 3);
        let lhs = induced_action(&rep, &ab, &v).unwrap();
        let rhs = induced_action(&rep, &a, &induced_action(&rep, &b, &v).unwrap()).unwrap();
        let d = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(d < 1e-9, "{kind}: {d}");
    }
}

#[test]
fn reproducing_kernel_acts_as_identity() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(1), su2(2), su2(0)]).unwrap();
    let bl = rep.bandlimit();
    let kernel = inverse(&FourierCoefficients::scalar_multiple_of_identity(GroupKind::Su2, bl, |_| 1.0));
    let v = random_vector(rep.dim(), 11);
    let pv = induced_action(&rep, &kernel, &v).unwrap();
    for (a, b) in pv.iter().zip(&v) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn parameters_are_checked() {
    let grid = Arc::new(haar_quadrature(GroupKind::Torus1, 4));
    let f = GridFunction::constant(grid, &[c(1.0, 0.0)]);
    let w = WeightFunction::gevrey(1.0).unwrap();
    assert!(matches!(strong_factorize(&f, &w, 1.0, 1.0), Err(Error::Parameter(_))));
    assert!(matches!(strong_factorize(&f, &w, 1.0, 0.5), Err(Error::Parameter(_))));
    assert!(matches!(strong_factorize(&f, &w, -1.0, 0.5), Err(Error::Domain(_))));
    let p = FactorizationParams::with_default_prime(w, 0.5).unwrap();
    assert_eq!(p.h_prime, 1.0);
    assert!((p.effective_h() - 1.0).abs() < 1e-15);
}

#[test]
fn multipliers_are_exact() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let t = random_coefficients(GroupKind::Torus2, 5, 2, 4);
    let f = inverse(&t);
    let r = strong_factorize(&f, &w, 1.0, 2.0).unwrap();
    for (i, xi) in r.g.dual().iter().enumerate() {
        let cxi = libm::exp(w.omega(xi.sqrt_casimir()) / 2.0);
        assert_eq!(r.multipliers[i], cxi);
        assert_eq!(r.g.block(i)[0], c(1.0 / cxi, 0.0));
        let expect: Vec<Complex64> = t.block(i).iter().map(|z| z * cxi).collect();
        assert!(crate::linalg::hs_distance(r.f_prime.block(i), &expect) <= 1e-12 * (1.0 + crate::linalg::hs_norm(&expect)));
    }
    assert!(r.residual <= 1e-10, "{}", r.residual);
    assert!(r.min_decay_margin() >= -1e-10);
}

#[test]
fn coefficient_convolution_recovers_input() {
    let w = WeightFunction::gevrey(0.5).unwrap();
    let t = random_coefficients(GroupKind::Su2, 3, 1, 8);
    let r = strong_factorize(&inverse(&t), &w, 0.7, 1.5).unwrap();
    let back = r.f_prime.compose_left(&r.g).unwrap();
    assert!(back.max_hs_distance(&t).unwrap() < 1e-12);
}

#[test]
fn poisson_transfers_decay() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let f = inverse(&poisson_coefficients(GroupKind::Torus1, 32, 2.0));
    let r = strong_factorize(&f, &w, 0.5, 1.0).unwrap();
    assert!(r.residual <= 1e-10);
    assert!((r.seminorm_f_prime - r.seminorm_f).abs() < 1e-9 * r.seminorm_f.max(1.0));
    // roundoff in the forward transform is amplified by C_ξ
    for ((xi, n), cxi) in r.f_prime.dual().iter().zip(r.f_prime.hs_norms()).zip(&r.multipliers) {
        let DualLabel::Torus1(k) = xi.label else { unreachable!() };
        let k = k.abs() as f64;
        let expect = libm::exp(-2.0 * k + w.omega(k));
        assert!((n - expect).abs() < 1e-12 + 1e-15 * cxi, "k = {k}");
    }
}

#[test]
fn single_block_function() {
    let w = WeightFunction::log1p();
    let xi = DualIndex::from_label(su2(2));
    let grid = Arc::new(haar_quadrature(GroupKind::Su2, 2));
    let f = GridFunction::from_scalar_fn(grid, |x| matrix_coefficients(&xi, x).unwrap()[4]);
    let r = strong_factorize(&f, &w, 1.0, 3.0).unwrap();
    let cxi = libm::exp(w.omega(xi.sqrt_casimir()) / 3.0);
    let fp = inverse_on(&r.f_prime, f.grid()).unwrap();
    assert!(fp.sup_distance(&f.scale(c(cxi, 0.0))).unwrap() < 1e-12);
    assert!(r.residual < 1e-12);
}

#[test]
fn bounded_family_shares_one_factor() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let grid = Arc::new(haar_quadrature(GroupKind::Torus1, 24));
    let mut fs: Vec<GridFunction> = [1.0, 1.5, 2.0]
        .iter()
        .map(|t| inverse_on(&poisson_coefficients(GroupKind::Torus1, 24, *t), &grid).unwrap())
        .collect();
    fs.push(GridFunction::zeros(grid.clone(), 1));
    let b = bounded_factorize_set(&fs, &w, 1.0, 2.0).unwrap();
    assert!(b.residuals.iter().all(|r| *r <= 1e-10));
    assert!(b.sup_seminorm.is_finite());
    assert!(b.min_decay_margin >= -1e-10);
    assert!(b.f_primes[3].hs_norms().iter().all(|n| *n == 0.0));

    let single = bounded_factorize_set(&fs[..1], &w, 1.0, 2.0).unwrap();
    let direct = strong_factorize(&fs[0], &w, 1.0, 2.0).unwrap();
    assert_eq!(single.g, direct.g);
    assert_eq!(single.f_primes[0], direct.f_prime);
    assert_eq!(single.residuals[0], direct.residual);
    assert!(matches!(bounded_factorize_set(&[], &w, 1.0, 2.0), Err(Error::Domain(_))));
}

#[test]
fn trivial_vector_factorization() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let rep = FiniteRep::new(GroupKind::Torus1, &[t1(0)]).unwrap();
    let v = [c(2.0, -1.0)];
    let r = factorize_vector(&rep, &v, &w, 1.0, 2.0).unwrap();
    assert!((r.v_tilde[0] - v[0]).norm() < 1e-12);
    assert!(r.residual < 1e-12);
}

#[test]
fn su2_vector_factorization() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(0), su2(1)]).unwrap();
    let v = random_vector(rep.dim(), 21);
    let r = factorize_vector(&rep, &v, &w, 1.0, 2.0).unwrap();
    assert!(r.residual <= 1e-9, "{}", r.residual);
    assert!(r.orbit_residual <= 1e-9, "{}", r.orbit_residual);
    assert!(matches!(factorize_vector(&rep, &v[..2], &w, 1.0, 2.0), Err(Error::DimensionMismatch { .. })));
    assert!(matches!(factorize_vector(&rep, &v, &w, 2.0, 1.0), Err(Error::Parameter(_))));
}

#[test]
fn torus_vector_factorization_in_rotated_basis() {
    let w = WeightFunction::log1p();
    let s = 1.0 / libm::sqrt(2.0);
    let rep = FiniteRep::new(GroupKind::Torus2, &[DualLabel::Torus2(1, -1), DualLabel::Torus2(0, 2)])
        .unwrap()
        .with_basis(vec![c(s, 0.0), c(0.0, s), c(0.0, s), c(s, 0.0)])
        .unwrap();
    let v = random_vector(2, 2);
    let r = factorize_vector(&rep, &v, &w, 0.5, 1.0).unwrap();
    assert!(r.residual <= 1e-9 && r.orbit_residual <= 1e-9);
}

#[test]
fn orbit_coefficients_are_equivariant() {
    let rep = FiniteRep::new(GroupKind::Su2, &[su2(0), su2(1), su2(2)]).unwrap();
    let v = random_vector(rep.dim(), 1);
    for seed in 0..3 {
        let x = random_element(GroupKind::Su2, seed);
        assert!(orbit_equivariance_defect(&rep, &v, &x).unwrap() < 1e-9);
    }
    let rep = FiniteRep::new(GroupKind::Torus1, &[t1(3), t1(-2)]).unwrap();
    let x = random_element(GroupKind::Torus1, 7);
    assert!(orbit_equivariance_defect(&rep, &random_vector(2, 3), &x).unwrap() < 1e-12);
}

#[test]
fn dual_of_factor_matches_enumeration() {
    let w = WeightFunction::gevrey(1.0).unwrap();
    let f = inverse(&random_coefficients(GroupKind::Su2, 2, 1, 0));
    let r = strong_factorize(&f, &w, 1.0, 2.0).unwrap();
    assert_eq!(r.g.dual(), enumerate_dual(GroupKind::Su2, 2).as_slice());
}

#[test]
fn pipeline_classify_then_factorize_at_the_measured_exponent() {
    let bl = 12;
    let grid = Arc::new(haar_quadrature(GroupKind::Torus1, bl));
    let f = inverse_on(&poisson_coefficients(GroupKind::Torus1, bl, 2.0), &grid).unwrap();
    let w = WeightFunction::gevrey(1.0).unwrap();
    let report = estimate_critical_h(&forward(&f, bl).unwrap(), &w).unwrap();
    assert!((report.h_star - 0.5).abs() < 0.05);
    let h = report.h_star * 1.1;
    let r = strong_factorize(&f, &w, h, 2.0 * h).unwrap();
    assert!(r.residual <= 1e-10);
    assert!(r.seminorm_f_prime.is_finite());
}

#[test]
fn pipeline_fitted_weight_drives_factorization() {
    let bl = 32;
    let t = heat_coefficients(GroupKind::Torus1, bl, 0.05);
    let w = fit_weight_from_decay(&t).unwrap();
    let grid = Arc::new(haar_quadrature(GroupKind::Torus1, bl));
    let f = inverse_on(&t, &grid).unwrap();
    let r = strong_factorize(&f, &w, 1.0, 2.0).unwrap();
    assert!(r.residual <= 1e-10);
    assert!(r.min_decay_margin() >= -1e-10 * r.seminorm_f.max(1.0));
}

mod supported_tests {
    use super::*;

    fn circle(bl: usize) -> Arc<QuadratureGrid> {
        Arc::new(haar_quadrature(GroupKind::Torus1, bl))
    }

    #[test]
    fn bump_values() {
        let grid = circle(32);
        let b = gevrey_bump(2.0, 0.0, 0.5, &grid).unwrap();
        assert!((b.values()[0].re - libm::exp(-1.0)).abs() < 1e-15);
        for (x, v) in grid.nodes.iter().zip(b.values()) {
            let GroupElement::Torus1(a) = x else { unreachable!() };
            let d = a.min(2.0 * PI - a);
            if d >= 0.5 {
                assert_eq!(v.re, 0.0);
            }
        }
        let fine = Arc::new(haar_quadrature(GroupKind::Torus1, 4));
        let centered = gevrey_bump(3.0, PI / 2.0, 1.0, &fine).unwrap();
        let top = fine.nodes.iter().position(|x| matches!(x, GroupElement::Torus1(a) if (a - PI / 2.0).abs() < 1e-12));
        if let Some(i) = top {
            assert!((centered.values()[i].re - libm::exp(-1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn bump_rejections() {
        let grid = circle(8);
        assert!(matches!(gevrey_bump(1.0, 0.0, 0.5, &grid), Err(Error::Quasianalytic(_))));
        assert!(matches!(gevrey_bump(0.5, 0.0, 0.5, &grid), Err(Error::Quasianalytic(_))));
        assert!(matches!(gevrey_bump(2.0, 0.0, 4.0, &grid), Err(Error::Domain(_))));
        let s2 = Arc::new(haar_quadrature(GroupKind::Su2, 2));
        assert!(matches!(gevrey_bump(2.0, 0.0, 0.5, &s2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bump_boundary_is_zero() {
        let n = 64;
        let grid = circle(n / 2 - 1);
        let step = 2.0 * PI / n as f64;
        let b = gevrey_bump(2.0, 0.0, 4.0 * step, &grid).unwrap();
        assert_eq!(b.values()[4].re, 0.0);
        assert_eq!(b.values()[n - 4].re, 0.0);
        assert!(b.values()[3].re > 0.0);
    }

    #[test]
    fn partition_of_unity() {
        let grid = circle(128);
        let chis = bump_partition(&grid, 0.5, 13, 2.0).unwrap();
        for i in 0..grid.len() {
            let s: f64 = chis.iter().map(|c| c.values()[i].re).sum();
            assert!((s - 1.0).abs() < 1e-10);
        }
        assert_eq!(required_pieces(0.5), 13);
        assert_eq!(default_pieces(0.5), 27);
        assert!(matches!(bump_partition(&grid, 0.5, 8, 2.0), Err(Error::Coverage { pieces: 8, required: 13 })));
    }

    #[test]
    fn pieces_vanish_outside_their_translate() {
        let grid = circle(64);
        let w = WeightFunction::gevrey(0.5).unwrap();
        let params = SupportedParams { delta: 0.5, pieces: 16, bump_order: 2.0 };
        let p = build_partition(&grid, params, &w, 1.0).unwrap();
        for (j, psi) in p.psis.iter().enumerate() {
            let center = 2.0 * PI * j as f64 / 16.0;
            for (x, v) in grid.nodes.iter().zip(psi.values()) {
                let GroupElement::Torus1(a) = x else { unreachable!() };
                let d = super::super::supported::offset_for_tests(*a, center);
                if d.abs() >= 0.25 {
                    assert_eq!(*v, c(0.0, 0.0));
                }
            }
        }
        assert!(p.reconstruction_defect() <= 1e-8);
    }

    #[test]
    fn partition_reconstructs_kernel_at_full_size() {
        let grid = circle(256);
        let w = WeightFunction::gevrey(0.5).unwrap();
        let p = build_partition(&grid, SupportedParams::new(0.5), &w, 1.0).unwrap();
        assert!(p.reconstruction_defect() <= 1e-8);
    }

    #[test]
    fn supported_pipeline() {
        let grid = circle(256);
        let w = WeightFunction::gevrey(0.5).unwrap();
        let f = inverse_on(&poisson_coefficients(GroupKind::Torus1, 256, 1.0), &grid).unwrap();
        let params = SupportedParams { delta: 0.5, pieces: 13, bump_order: 2.0 };
        let r = supported_factorize(&f, &w, 0.5, 1.0, params).unwrap();
        assert!(r.mu.iter().all(|m| *m > 0.0));
        assert!(r.eigen_bound_holds(EIGEN_TOLERANCE));
        assert!(r.residual <= SUPPORTED_TOLERANCE, "{}", r.residual);
        assert!(r.s.blocks().iter().all(|b| b[0].im.abs() < 1e-12));
    }

    #[test]
    fn supported_rejections() {
        let grid = circle(32);
        let f = GridFunction::constant(grid, &[c(1.0, 0.0)]);
        let analytic = WeightFunction::gevrey(1.0).unwrap();
        assert!(matches!(
            supported_factorize(&f, &analytic, 0.5, 1.0, SupportedParams::new(0.5)),
            Err(Error::Quasianalytic(_))
        ));
        let w = WeightFunction::gevrey(0.5).unwrap();
        let bad_order = SupportedParams { bump_order: 1.0, ..SupportedParams::new(0.5) };
        assert!(matches!(supported_factorize(&f, &w, 0.5, 1.0, bad_order), Err(Error::Quasianalytic(_))));
        let few = SupportedParams { pieces: 8, ..SupportedParams::new(0.5) };
        assert!(matches!(supported_factorize(&f, &w, 0.5, 1.0, few), Err(Error::Coverage { .. })));
        assert!(matches!(supported_factorize(&f, &w, 1.0, 0.5, SupportedParams::new(0.5)), Err(Error::Parameter(_))));
    }

    #[test]
    fn tiny_support_is_ill_conditioned() {
        let grid = circle(128);
        let w = WeightFunction::gevrey(0.5).unwrap();
        let f = GridFunction::constant(grid, &[c(1.0, 0.0)]);
        let r = supported_factorize(&f, &w, 0.5, 1.0, SupportedParams { delta: 0.08, pieces: 80, bump_order: 2.0 });
        assert!(matches!(r, Err(Error::Conditioning { .. }) | Ok(_)));
        if let Ok(r) = r {
            assert!(r.eigen_bound_holds(EIGEN_TOLERANCE));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decay_transfer_holds(seed in 0u64..1000, h in 0.2f64..2.0, ratio in 1.1f64..4.0) {
        let w = WeightFunction::gevrey(0.5).unwrap();
        let f = inverse(&random_coefficients(GroupKind::Torus1, 12, 1, seed));
        let r = strong_factorize(&f, &w, h, h * ratio).unwrap();
        prop_assert!(r.residual <= 1e-10);
        prop_assert!(r.min_decay_margin() >= -1e-10 * r.seminorm_f.max(1.0));
    }

    #[test]
    fn vector_orbit_identity(seed in 0u64..1000) {
        let w = WeightFunction::gevrey(1.0).unwrap();
        let rep = FiniteRep::new(GroupKind::Torus1, &[t1(-3), t1(0), t1(5)]).unwrap();
        let v = random_vector(3, seed);
        let r = factorize_vector(&rep, &v, &w, 1.0, 2.0).unwrap();
        prop_assert!(r.residual <= 1e-9 && r.orbit_residual <= 1e-9);
    }
}
