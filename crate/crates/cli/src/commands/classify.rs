use peterweyl_core::classify::{estimate_critical_h, gevrey_order_estimate};
use peterweyl_core::spectral::{iterate_seminorm, DEFAULT_J_MAX};
use serde::Serialize;

use super::load_input;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::formats::{write_decay_report_csv, write_json, write_seminorm_csv};

#[derive(Serialize)]
struct HRow {
    h: f64,
    seminorm: Option<f64>,
}

#[derive(Serialize)]
struct DecayReportFile {
    weight: String,
    /// `None` when the coefficients do not decay against the weight.
    h_star: Option<f64>,
    slope: f64,
    intercept: f64,
    residual: f64,
    super_decay: bool,
    gevrey_order: Option<f64>,
    h_table: Vec<HRow>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub(super) fn run(config: &RunConfig) -> CliResult<()> {
    let input = load_input(config)?;
    let w = config.weight.build()?;
    let report = estimate_critical_h(&input.coefficients, &w)?;
    let file = DecayReportFile {
        weight: config.weight.to_string(),
        h_star: finite(report.h_star),
        slope: report.slope,
        intercept: report.intercept,
        residual: report.residual,
        super_decay: report.super_decay,
        gevrey_order: gevrey_order_estimate(&input.coefficients).ok(),
        h_table: report.h_table.iter().map(|(h, s)| HRow { h: *h, seminorm: finite(*s) }).collect(),
    };
    write_json(&config.out_path("decay_report.json"), &file)?;
    write_decay_report_csv(&config.out_path("decay_report.csv"), &report)?;
    let seminorms = iterate_seminorm(&input.function, &w, config.h, DEFAULT_J_MAX)?;
    write_seminorm_csv(&config.out_path("seminorms.csv"), &seminorms)?;

    match file.h_star {
        Some(h) => println!("critical h: {h:.6}"),
        None => println!("critical h: unbounded"),
    }
    if let Some(s) = file.gevrey_order {
        println!("fitted gevrey order: {s:.4}");
    }
    if report.super_decay {
        println!("decay outpaces the weight (super-weight decay)");
    }
    println!("iterate seminorm at h = {}: {:.6e}", config.h, seminorms.value);
    Ok(())
}
