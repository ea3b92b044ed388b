//! The property suite behind `peterweyl verify`.

use std::sync::Arc;

use peterweyl_core::classify::{estimate_critical_h, gevrey_order_estimate};
use peterweyl_core::factorize::{
    bounded_factorize_set, default_pieces, factorize_vector, strong_factorize, supported_factorize, FiniteRep,
    SupportedParams, EIGEN_TOLERANCE,
};
use peterweyl_core::fourier::{convolve_by_quadrature, forward, inverse_on, parseval_defect, GridFunction};
use peterweyl_core::group::{
    enumerate_dual, haar_quadrature, weyl_summability, DualLabel, EulerZyz, GroupElement, GroupKind,
};
use peterweyl_core::samples::{coefficients_with_norms, poisson_coefficients, random_function, random_vector};
use peterweyl_core::spectral::{iterate_seminorm, iterates_vs_decay_check, laplacian_fd_defect};
use peterweyl_core::weights::{gevrey_conjugate, young_inequality_witness, WeightFunction, YoungConjugate, DEFAULT_RESOLUTION};
use peterweyl_core::{Complex64, Error};
use serde::Serialize;

use crate::config::{CommandParams, RunConfig};
use crate::error::{CliError, CliResult};
use crate::formats::write_json;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub property: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Sizes and switches for one run of the suite.
#[derive(Debug, Clone, Copy)]
struct Setup {
    bandlimit: usize,
    seed: u64,
    conv_sign_fault: bool,
}

impl Setup {
    fn sizes(&self) -> [(GroupKind, usize); 3] {
        [
            (GroupKind::Torus1, self.bandlimit),
            (GroupKind::Torus2, self.bandlimit.min(8)),
            (GroupKind::Su2, self.bandlimit.min(4)),
        ]
    }

    fn functions(&self, kind: GroupKind, bl: usize, count: u64) -> Vec<GridFunction> {
        let grid = Arc::new(haar_quadrature(kind, bl));
        (0..count).map(|i| random_function(&grid, 1, self.seed.wrapping_mul(1000).wrapping_add(i))).collect()
    }
}

type Check = fn(&Setup) -> Result<(bool, String), Error>;

fn parseval(setup: &Setup) -> Result<(bool, String), Error> {
    let mut worst: f64 = 0.0;
    for (kind, bl) in setup.sizes() {
        for f in setup.functions(kind, bl, 3) {
            worst = worst.max(parseval_defect(&f));
        }
    }
    Ok((worst <= 1e-9, format!("max defect {worst:.2e}")))
}

fn roundtrip(setup: &Setup) -> Result<(bool, String), Error> {
    let mut worst: f64 = 0.0;
    for (kind, bl) in setup.sizes() {
        for f in setup.functions(kind, bl, 3) {
            let back = inverse_on(&forward(&f, bl)?, f.grid())?;
            worst = worst.max(back.sup_distance(&f)?);
        }
    }
    Ok((worst <= 1e-9, format!("max sup error {worst:.2e}")))
}

fn conv_theorem(setup: &Setup) -> Result<(bool, String), Error> {
    let mut worst: f64 = 0.0;
    for (kind, bl) in [(GroupKind::Torus1, setup.bandlimit.min(16)), (GroupKind::Su2, 2)] {
        let fs = setup.functions(kind, bl, 2);
        let mut conv = convolve_by_quadrature(&fs[0], &fs[1])?;
        if setup.conv_sign_fault {
            conv = conv.scale(Complex64::new(-1.0, 0.0));
        }
        let lhs = forward(&conv, bl)?;
        let rhs = forward(&fs[1], bl)?.compose_left(&forward(&fs[0], bl)?)?;
        worst = worst.max(lhs.max_hs_distance(&rhs)?);
    }
    Ok((worst <= 1e-8, format!("max HS defect {worst:.2e}")))
}

fn laplacian(setup: &Setup) -> Result<(bool, String), Error> {
    let r = random_vector(3, setup.seed);
    let points = [
        GroupElement::Torus1(3.0 + 3.0 * r[0].re),
        GroupElement::Torus2([3.0 + 3.0 * r[0].im, 3.0 + 3.0 * r[1].re]),
        GroupElement::Su2(EulerZyz::new(3.0 + 3.0 * r[1].im, 1.5 + 1.4 * r[2].re, 6.0 + 6.0 * r[2].im)?),
    ];
    let mut worst: f64 = 0.0;
    for (x, bl) in points.iter().zip([4, 4, 8]) {
        for xi in enumerate_dual(x.kind(), bl).into_iter().filter(|xi| xi.casimir <= 20.0) {
            worst = worst.max(laplacian_fd_defect(&xi, x, 1e-3)?);
        }
    }
    Ok((worst <= 1e-3, format!("max defect {worst:.2e}")))
}

fn poisson_t1(bl: usize, t: f64) -> Result<GridFunction, Error> {
    inverse_on(&poisson_coefficients(GroupKind::Torus1, bl, t), &Arc::new(haar_quadrature(GroupKind::Torus1, bl)))
}

fn iterates(setup: &Setup) -> Result<(bool, String), Error> {
    let check = iterates_vs_decay_check(&poisson_t1(setup.bandlimit, 1.0)?, &WeightFunction::gevrey(1.0)?, 1.0)?;
    Ok((check.consistent, format!("C1 {:.2e}, C2 {:.2e}", check.c1, check.c2)))
}

fn seminorm_stability(setup: &Setup) -> Result<(bool, String), Error> {
    let f = poisson_t1(setup.bandlimit, 1.0)?;
    let w = WeightFunction::gevrey(1.0)?;
    let a = iterate_seminorm(&f, &w, 1.2, 40)?.value;
    let b = iterate_seminorm(&f, &w, 1.2, 80)?.value;
    let drift = (b - a).abs() / a;
    Ok((drift <= 0.01, format!("drift {drift:.2e}")))
}

fn classification(setup: &Setup) -> Result<(bool, String), Error> {
    let bl = setup.bandlimit.max(32);
    let (mut ds, mut dh): (f64, f64) = (0.0, 0.0);
    for c in [0.5, 1.0, 2.0] {
        for s in [0.5, 1.0] {
            let t = coefficients_with_norms(GroupKind::Torus1, bl, |xi| (-c * xi.casimir.powf(s / 2.0)).exp());
            ds = ds.max((gevrey_order_estimate(&t)? - s).abs() / s);
            dh = dh.max((estimate_critical_h(&t, &WeightFunction::gevrey(s)?)?.h_star * c - 1.0).abs());
        }
    }
    Ok((ds <= 0.05 && dh <= 0.10, format!("order {ds:.2e}, critical h {dh:.2e}")))
}

fn strong(setup: &Setup) -> Result<(bool, String), Error> {
    let w = WeightFunction::gevrey(1.0)?;
    let mut residual: f64 = 0.0;
    let mut margin_ok = true;
    for (kind, bl) in [(GroupKind::Torus1, setup.bandlimit.min(12)), (GroupKind::Su2, 4)] {
        for f in setup.functions(kind, bl, 3) {
            let r = strong_factorize(&f, &w, 1.0, 2.0)?;
            residual = residual.max(r.residual);
            margin_ok &= r.min_decay_margin() >= -1e-10 * r.seminorm_f.max(1.0);
        }
    }
    let family = [1.0, 1.5, 2.0].iter().map(|t| poisson_t1(24, *t)).collect::<Result<Vec<_>, _>>()?;
    let b = bounded_factorize_set(&family, &w, 1.0, 2.0)?;
    residual = b.residuals.iter().copied().fold(residual, f64::max);
    margin_ok &= b.min_decay_margin >= -1e-10;
    Ok((residual <= 1e-10 && margin_ok, format!("residual {residual:.2e}, margins ok {margin_ok}")))
}

fn vector(setup: &Setup) -> Result<(bool, String), Error> {
    let rep = FiniteRep::new(GroupKind::Su2, &[DualLabel::Su2(0), DualLabel::Su2(1), DualLabel::Su2(2)])?;
    let v = random_vector(rep.dim(), setup.seed);
    let r = factorize_vector(&rep, &v, &WeightFunction::gevrey(1.0)?, 1.0, 2.0)?;
    Ok((
        r.residual <= 1e-9 && r.orbit_residual <= 1e-9,
        format!("residual {:.2e}, orbit {:.2e}", r.residual, r.orbit_residual),
    ))
}

fn supported(_: &Setup) -> Result<(bool, String), Error> {
    let f = poisson_t1(256, 1.0)?;
    let params = SupportedParams { delta: 0.5, pieces: default_pieces(0.5), bump_order: 2.0 };
    let r = supported_factorize(&f, &WeightFunction::gevrey(0.5)?, 0.5, 1.0, params)?;
    let pass = r.eigen_bound_holds(EIGEN_TOLERANCE)
        && r.min_eigenvalue() > 0.0
        && r.outside_support_relative <= 1e-6
        && r.residual <= 1e-7;
    Ok((
        pass,
        format!("k {}, min mu {:.2e}, outside {:.2e}, residual {:.2e}", params.pieces, r.min_eigenvalue(), r.outside_support_relative, r.residual),
    ))
}

fn weyl(_: &Setup) -> Result<(bool, String), Error> {
    let dyadic = |table: &[(usize, f64)], l: usize| {
        let at = |n: usize| table[n - 1].1;
        (at(2 * l) - at(l)) / (at(l) - at(l / 2))
    };
    let conv = weyl_summability(GroupKind::Su2, 3.0, 64);
    let div = weyl_summability(GroupKind::Su2, 1.5, 64);
    let c = [8, 16, 32].iter().map(|l| dyadic(&conv, *l)).fold(0.0, f64::max);
    let d = [8, 16, 32].iter().map(|l| dyadic(&div, *l)).fold(f64::INFINITY, f64::min);
    let increasing = div.windows(2).all(|p| p[1].1 > p[0].1);
    Ok((c <= 0.7 && d >= 0.9 && increasing, format!("ratios {c:.3} / {d:.3}")))
}

fn young(_: &Setup) -> Result<(bool, String), Error> {
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0] {
        let w = WeightFunction::gevrey(s)?;
        for h in [0.5, 1.0, 2.0] {
            let grid = YoungConjugate::new(w.clone(), h, DEFAULT_RESOLUTION)?;
            for i in 0..=50 {
                let t = i as f64;
                let exact = gevrey_conjugate(s, h * t) / h;
                worst = worst.max((grid.eval(t)? - exact).abs() / exact.max(1e-6));
            }
        }
    }
    Ok((worst <= 1e-6, format!("max relative error {worst:.2e}")))
}

fn young_witness(_: &Setup) -> Result<(bool, String), Error> {
    let grid: Vec<f64> = (2..=200).map(|i| 0.5 * i as f64).collect();
    let w = young_inequality_witness(&WeightFunction::gevrey(0.5)?, 1.0, &grid)?;
    Ok((w.max_defect <= 0.0, format!("h' {:.3}, log C {:.3}", w.h_prime, w.c)))
}

const PROPERTIES: [(&str, Check); 13] = [
    ("parseval", parseval),
    ("roundtrip", roundtrip),
    ("conv-theorem", conv_theorem),
    ("laplacian-eigenvalues", laplacian),
    ("iterates-vs-decay", iterates),
    ("seminorm-stability", seminorm_stability),
    ("gevrey-classification", classification),
    ("strong-factorization", strong),
    ("vector-factorization", vector),
    ("supported-factorization", supported),
    ("weyl-summability", weyl),
    ("young-conjugate", young),
    ("young-witness", young_witness),
];

/// Runs every property; errors count as failures.
pub fn run_properties(bandlimit: usize, seed: u64, conv_sign_fault: bool) -> Vec<PropertyOutcome> {
    let setup = Setup { bandlimit: bandlimit.max(4), seed, conv_sign_fault };
    PROPERTIES
        .iter()
        .map(|(name, check)| match check(&setup) {
            Ok((pass, detail)) => PropertyOutcome { property: name, pass, detail },
            Err(e) => PropertyOutcome { property: name, pass: false, detail: format!("error: {e}") },
        })
        .collect()
}

pub(super) fn run(config: &RunConfig) -> CliResult<()> {
    let CommandParams::Verify { inject_fault } = &config.params else { unreachable!("verify parameters") };
    let outcomes = run_properties(config.bandlimit, config.seed, inject_fault.as_deref() == Some("conv-sign"));
    for o in &outcomes {
        println!("{:<26} {}  {}", o.property, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    write_json(&config.out_path("verify.json"), &outcomes)?;
    let failing: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.property).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failing.join(", ")))
    }
}
