use peterweyl_core::factorize::{
    factorize_vector, strong_factorize, supported_factorize, FactorizationParams, FiniteRep, SupportedParams,
    GLOBAL_TOLERANCE, SUPPORTED_TOLERANCE,
};
use peterweyl_core::group::{DualLabel, GroupKind};
use peterweyl_core::samples::random_vector;
use peterweyl_core::Complex64;
use serde::Serialize;

use super::load_input;
use crate::config::{CommandParams, RunConfig};
use crate::error::{CliError, CliResult};
use crate::formats::{write_coefficients, write_grid_function, write_json, write_labelled_csv};

#[derive(Serialize)]
struct ParamsFile {
    weight: String,
    h: f64,
    h_prime: f64,
    h_effective: f64,
}

impl ParamsFile {
    fn new(config: &RunConfig, p: &FactorizationParams) -> Self {
        ParamsFile { weight: config.weight.to_string(), h: p.h, h_prime: p.h_prime, h_effective: p.effective_h() }
    }
}

#[derive(Serialize)]
struct Multiplier {
    xi: String,
    value: f64,
}

#[derive(Serialize)]
struct GlobalFile {
    multipliers: Vec<Multiplier>,
    residual: f64,
    params: ParamsFile,
    seminorm_f: f64,
    seminorm_f_prime: f64,
    min_decay_margin: f64,
}

#[derive(Serialize)]
struct SupportedFile {
    residual: f64,
    params: ParamsFile,
    support_delta: f64,
    pieces: usize,
    bump_order: f64,
    min_eigenvalue: f64,
    eigen_bound_holds: bool,
    outside_support_mass: f64,
    outside_support_relative: f64,
    partition_defect: f64,
}

#[derive(Serialize)]
struct VectorFile {
    rep: Vec<String>,
    v: Vec<[f64; 2]>,
    v_tilde: Vec<[f64; 2]>,
    residual: f64,
    orbit_residual: f64,
    params: ParamsFile,
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Comma-separated block labels: twice-spins on su2, integers on t1,
/// `a:b` pairs on t2.
pub(crate) fn parse_rep(kind: GroupKind, spec: &str) -> CliResult<Vec<DualLabel>> {
    let bad = |item: &str| CliError::Usage(format!("bad representation block {item:?} for {kind}"));
    spec.split(',')
        .map(str::trim)
        .map(|item| match kind {
            GroupKind::Su2 => item.parse().map(DualLabel::Su2).map_err(|_| bad(item)),
            GroupKind::Torus1 => item.parse().map(DualLabel::Torus1).map_err(|_| bad(item)),
            GroupKind::Torus2 => {
                let (a, b) = item.split_once(':').ok_or_else(|| bad(item))?;
                Ok(DualLabel::Torus2(a.parse().map_err(|_| bad(item))?, b.parse().map_err(|_| bad(item))?))
            }
        })
        .collect()
}

fn check_residual(residual: f64, tolerance: f64) -> CliResult<()> {
    if residual > tolerance {
        return Err(CliError::Verification(format!("factorization residual {residual:.3e} exceeds {tolerance:.0e}")));
    }
    Ok(())
}

pub(super) fn run(config: &RunConfig) -> CliResult<()> {
    let CommandParams::Factorize { supported, support_delta, pieces, bump_order, rep } = &config.params else {
        unreachable!("factorize parameters")
    };
    let w = config.weight.build()?;
    if let Some(rep) = rep {
        let kind = config.group_kind()?;
        let labels = parse_rep(kind, rep)?;
        let rep = FiniteRep::new(kind, &labels)?;
        let v = random_vector(rep.dim(), config.seed);
        let r = factorize_vector(&rep, &v, &w, config.h, config.h_prime)?;
        write_json(
            &config.out_path("vector.json"),
            &VectorFile {
                rep: labels.iter().map(ToString::to_string).collect(),
                v: pairs(&v),
                v_tilde: pairs(&r.v_tilde),
                residual: r.residual,
                orbit_residual: r.orbit_residual,
                params: ParamsFile::new(config, &r.factorization.params),
            },
        )?;
        write_grid_function(&config.out_path("g_check.csv"), &r.g_check)?;
        println!("vector residual: {:.3e}", r.residual);
        println!("orbit residual: {:.3e}", r.orbit_residual);
        return check_residual(r.residual.max(r.orbit_residual), 1e-9);
    }

    let input = load_input(config)?;
    if *supported {
        let params = SupportedParams { delta: *support_delta, pieces: *pieces, bump_order: *bump_order };
        let r = supported_factorize(&input.function, &w, config.h, config.h_prime, params)?;
        write_json(
            &config.out_path("factorization.json"),
            &SupportedFile {
                residual: r.residual,
                params: ParamsFile::new(config, &r.params),
                support_delta: params.delta,
                pieces: params.pieces,
                bump_order: params.bump_order,
                min_eigenvalue: r.min_eigenvalue(),
                eigen_bound_holds: r.eigen_bound_holds(peterweyl_core::factorize::EIGEN_TOLERANCE),
                outside_support_mass: r.outside_support_mass,
                outside_support_relative: r.outside_support_relative,
                partition_defect: r.partition_defect,
            },
        )?;
        write_coefficients(&config.out_path("g.json"), &r.s)?;
        write_coefficients(&config.out_path("f_prime.json"), &r.f_prime)?;
        write_grid_function(&config.out_path("g.csv"), &r.g)?;
        let labels: Vec<DualLabel> = r.s.dual().iter().map(|xi| xi.label).collect();
        write_labelled_csv(&config.out_path("eigenvalues.csv"), ["xi", "mu"], &labels, &r.mu)?;
        println!("residual: {:.3e}", r.residual);
        println!("smallest eigenvalue: {:.3e}", r.min_eigenvalue());
        println!("mass outside support (relative): {:.3e}", r.outside_support_relative);
        return check_residual(r.residual, SUPPORTED_TOLERANCE);
    }

    let r = strong_factorize(&input.function, &w, config.h, config.h_prime)?;
    let labels: Vec<DualLabel> = r.g.dual().iter().map(|xi| xi.label).collect();
    write_json(
        &config.out_path("factorization.json"),
        &GlobalFile {
            multipliers: labels
                .iter()
                .zip(&r.multipliers)
                .map(|(l, c)| Multiplier { xi: l.to_string(), value: *c })
                .collect(),
            residual: r.residual,
            params: ParamsFile::new(config, &r.params),
            seminorm_f: r.seminorm_f,
            seminorm_f_prime: r.seminorm_f_prime,
            min_decay_margin: r.min_decay_margin(),
        },
    )?;
    write_coefficients(&config.out_path("g.json"), &r.g)?;
    write_coefficients(&config.out_path("f_prime.json"), &r.f_prime)?;
    write_labelled_csv(&config.out_path("margins.csv"), ["xi", "margin"], &labels, &r.decay_margins)?;
    println!("residual: {:.3e}", r.residual);
    println!("min decay-transfer margin: {:.3e}", r.min_decay_margin());
    check_residual(r.residual, GLOBAL_TOLERANCE)
}
