mod classify;
mod factorize;
mod transform;
mod verify;

use std::fs;
use std::sync::Arc;

use peterweyl_core::factorize::gevrey_bump;
use peterweyl_core::fourier::{forward, inverse_on, FourierCoefficients, GridFunction};
use peterweyl_core::group::{haar_quadrature, GroupKind};
use peterweyl_core::samples::{heat_coefficients, poisson_coefficients};

use crate::config::{Builtin, CommandParams, InputSource, RunConfig};
use crate::error::{CliError, CliResult};
use crate::formats::{read_coefficients, read_grid_function, write_json};

pub use verify::{run_properties, PropertyOutcome};

/// Runs the command described by `config`, writing its artifacts and the
/// manifest under `config.out`.
pub fn execute(config: &RunConfig) -> CliResult<()> {
    fs::create_dir_all(config.out_dir()).map_err(|e| CliError::io(config.out_dir(), e))?;
    write_json(&config.out_path("manifest.json"), config)?;
    match &config.params {
        CommandParams::Transform => transform::run(config),
        CommandParams::Classify => classify::run(config),
        CommandParams::Factorize { .. } => factorize::run(config),
        CommandParams::Verify { .. } => verify::run(config),
    }
}

/// An input function together with its coefficients at the configured band limit.
pub(crate) struct LoadedInput {
    pub function: GridFunction,
    pub coefficients: FourierCoefficients,
}

pub(crate) fn load_input(config: &RunConfig) -> CliResult<LoadedInput> {
    let kind = config.group_kind()?;
    let bl = config.bandlimit;
    let grid = || Arc::new(haar_quadrature(kind, bl));
    match config.input_source()? {
        InputSource::Builtin(b) => {
            let grid = grid();
            match b {
                Builtin::Poisson(t) | Builtin::Heat(t) => {
                    let coefficients = match b {
                        Builtin::Poisson(_) => poisson_coefficients(kind, bl, t),
                        _ => heat_coefficients(kind, bl, t),
                    };
                    let function = inverse_on(&coefficients, &grid)?;
                    Ok(LoadedInput { function, coefficients })
                }
                Builtin::Bump { s, delta } => {
                    let function = gevrey_bump(s, 0.0, delta, &grid)?;
                    let coefficients = forward(&function, bl)?;
                    Ok(LoadedInput { function, coefficients })
                }
            }
        }
        InputSource::GridCsv(path) => {
            let function = read_grid_function(&path, &grid())?;
            let coefficients = forward(&function, bl)?;
            Ok(LoadedInput { function, coefficients })
        }
        InputSource::Coefficients(path) => {
            let coefficients = read_coefficients(&path)?;
            check_matches(config, kind, &coefficients)
                .map_err(|m| CliError::malformed(&path, m))?;
            let function = inverse_on(&coefficients, &grid())?;
            Ok(LoadedInput { function, coefficients })
        }
    }
}

fn check_matches(config: &RunConfig, kind: GroupKind, t: &FourierCoefficients) -> Result<(), String> {
    if t.kind() != kind {
        return Err(format!("coefficients on {} but --group is {kind}", t.kind()));
    }
    if t.bandlimit() != config.bandlimit {
        return Err(format!("band limit {} does not match --bandlimit {}", t.bandlimit(), config.bandlimit));
    }
    Ok(())
}
