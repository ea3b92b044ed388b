use peterweyl_core::fourier::{forward, inverse_on};

use super::load_input;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::formats::{write_coefficients, write_decay_csv};

pub(super) fn run(config: &RunConfig) -> CliResult<()> {
    let input = load_input(config)?;
    write_coefficients(&config.out_path("coefficients.json"), &input.coefficients)?;
    write_decay_csv(&config.out_path("decay.csv"), &input.coefficients)?;
    let f = &input.function;
    let back = inverse_on(&forward(f, config.bandlimit)?, f.grid())?;
    println!("dual indices: {}", input.coefficients.dual().len());
    println!("roundtrip sup error: {:.3e}", back.sup_distance(f)?);
    Ok(())
}
