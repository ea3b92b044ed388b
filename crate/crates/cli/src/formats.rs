//! File formats: coefficient JSON, grid-function CSV and the tabular reports.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use peterweyl_core::classify::DecayReport;
use peterweyl_core::fourier::{FourierCoefficients, GridFunction};
use peterweyl_core::group::{DualLabel, GroupElement, GroupKind, QuadratureGrid};
use peterweyl_core::spectral::SeminormReport;
use peterweyl_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// One dual index: its label and the `m · d²` entries of the block,
/// component slices in order, each row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub xi: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub group: String,
    pub bandlimit: usize,
    pub value_dim: usize,
    pub entries: Vec<CoefficientEntry>,
}

impl CoefficientFile {
    pub fn from_coefficients(t: &FourierCoefficients) -> Self {
        let entries = t
            .dual()
            .iter()
            .zip(t.blocks())
            .map(|(xi, b)| CoefficientEntry {
                xi: xi.label.to_string(),
                re: b.iter().map(|z| z.re).collect(),
                im: b.iter().map(|z| z.im).collect(),
            })
            .collect();
        CoefficientFile { group: t.kind().to_string(), bandlimit: t.bandlimit(), value_dim: t.value_dim(), entries }
    }

    pub fn to_coefficients(&self) -> Result<FourierCoefficients, String> {
        let kind: GroupKind = self.group.parse().map_err(|e| format!("{e}"))?;
        let mut t = FourierCoefficients::zeros(kind, self.bandlimit, self.value_dim);
        let mut seen = vec![false; t.dual().len()];
        for e in &self.entries {
            let label: DualLabel = e.xi.parse().map_err(|err| format!("{err}"))?;
            let i = t.position(label).ok_or_else(|| format!("{} is not in the {kind} dual at band limit {}", e.xi, self.bandlimit))?;
            if seen[i] {
                return Err(format!("duplicate entry {}", e.xi));
            }
            seen[i] = true;
            let block = t.block_mut(i);
            if e.re.len() != block.len() || e.im.len() != block.len() {
                return Err(format!("entry {} has {} values, expected {}", e.xi, e.re.len().max(e.im.len()), block.len()));
            }
            for (z, (re, im)) in block.iter_mut().zip(e.re.iter().zip(&e.im)) {
                *z = Complex64::new(*re, *im);
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(format!("missing entry {}", t.dual()[i].label));
        }
        Ok(t)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_coefficients(path: &Path) -> CliResult<FourierCoefficients> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: CoefficientFile = serde_json::from_str(&text).map_err(|e| CliError::malformed(path, e))?;
    file.to_coefficients().map_err(|e| CliError::malformed(path, e))
}

pub fn write_coefficients(path: &Path, t: &FourierCoefficients) -> CliResult<()> {
    write_json(path, &CoefficientFile::from_coefficients(t))
}

/// Shortest round-trip text, in exponent form for very small or large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|e| csv_error(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::malformed(path, format!("{other:?}")),
    }
}

fn write_rows(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
    let mut w = writer(path)?;
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// `sqrt_lambda,hsnorm` per dual index.
pub fn write_decay_csv(path: &Path, t: &FourierCoefficients) -> CliResult<()> {
    let rows = t.dual().iter().zip(t.hs_norms()).map(|(xi, n)| vec![fmt_f64(xi.sqrt_casimir()), fmt_f64(n)]);
    write_rows(path, &["sqrt_lambda", "hsnorm"], rows)
}

/// `sqrt_lambda,log_hsnorm,fitted`.
pub fn write_decay_report_csv(path: &Path, report: &DecayReport) -> CliResult<()> {
    let rows = report
        .points
        .iter()
        .map(|p| vec![fmt_f64(p.sqrt_lambda), fmt_f64(p.log_hsnorm), fmt_f64(p.fitted)]);
    write_rows(path, &["sqrt_lambda", "log_hsnorm", "fitted"], rows)
}

/// `j,supnorm,weighted`.
pub fn write_seminorm_csv(path: &Path, report: &SeminormReport) -> CliResult<()> {
    let rows = report.rows.iter().map(|r| vec![r.j.to_string(), fmt_f64(r.supnorm), fmt_f64(r.weighted)]);
    write_rows(path, &["j", "supnorm", "weighted"], rows)
}

/// Two-column rows keyed by dual label.
pub fn write_labelled_csv(path: &Path, header: [&str; 2], labels: &[DualLabel], values: &[f64]) -> CliResult<()> {
    let rows = labels.iter().zip(values).map(|(l, v)| vec![l.to_string(), fmt_f64(*v)]);
    write_rows(path, &header, rows)
}

fn coordinate_names(kind: GroupKind) -> &'static [&'static str] {
    match kind {
        GroupKind::Torus1 => &["x"],
        GroupKind::Torus2 => &["x1", "x2"],
        GroupKind::Su2 => &["alpha", "beta", "gamma"],
    }
}

fn coordinates(x: &GroupElement) -> Vec<f64> {
    match x {
        GroupElement::Torus1(a) => vec![*a],
        GroupElement::Torus2(a) => a.to_vec(),
        GroupElement::Su2(e) => vec![e.alpha, e.beta, e.gamma],
    }
}

fn value_columns(m: usize) -> Vec<String> {
    if m == 1 {
        return vec!["re".into(), "im".into()];
    }
    (0..m).flat_map(|c| [format!("re{c}"), format!("im{c}")]).collect()
}

/// Node-ordered CSV: `node`, the node coordinates, then `re,im` (or
/// `re0,im0,re1,im1,...` for vector values).
pub fn write_grid_function(path: &Path, f: &GridFunction) -> CliResult<()> {
    let kind = f.kind();
    let mut header: Vec<String> = vec!["node".into()];
    header.extend(coordinate_names(kind).iter().map(|s| s.to_string()));
    header.extend(value_columns(f.value_dim()));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = f.grid().nodes.iter().enumerate().map(|(i, x)| {
        let mut row = vec![i.to_string()];
        row.extend(coordinates(x).into_iter().map(fmt_f64));
        for z in f.value(i) {
            row.push(fmt_f64(z.re));
            row.push(fmt_f64(z.im));
        }
        row
    });
    write_rows(path, &header_refs, rows)
}

/// Reads a grid-function CSV sampled on `grid`. Node coordinates must
/// match the grid to `1e-9`.
pub fn read_grid_function(path: &Path, grid: &Arc<QuadratureGrid>) -> CliResult<GridFunction> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let header = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let coords = coordinate_names(grid.kind);
    let prefix = 1 + coords.len();
    let expected_prefix: Vec<&str> = std::iter::once("node").chain(coords.iter().copied()).collect();
    if header.len() <= prefix || header.iter().take(prefix).ne(expected_prefix.iter().copied()) {
        return Err(CliError::malformed(path, format!("header must start with {}", expected_prefix.join(","))));
    }
    let value_cols = header.len() - prefix;
    if value_cols % 2 != 0 {
        return Err(CliError::malformed(path, "value columns must come in re,im pairs"));
    }
    let m = value_cols / 2;
    if header.iter().skip(prefix).ne(value_columns(m).iter().map(String::as_str)) {
        return Err(CliError::malformed(path, format!("value columns must be {}", value_columns(m).join(","))));
    }
    let mut values = Vec::with_capacity(grid.len() * m);
    let mut rows = 0;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let nums = record
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CliError::malformed(path, format!("row {}: {e}", line + 1)))?;
        if nums.len() != header.len() {
            return Err(CliError::malformed(path, format!("row {} has {} fields", line + 1, nums.len())));
        }
        let node = grid
            .nodes
            .get(line)
            .ok_or_else(|| CliError::malformed(path, format!("more rows than the {} grid nodes", grid.len())))?;
        if nums[0] != line as f64 {
            return Err(CliError::malformed(path, format!("row {} is labelled node {}", line + 1, nums[0])));
        }
        let expected = coordinates(node);
        if expected.iter().zip(&nums[1..prefix]).any(|(a, b)| (a - b).abs() > 1e-9) {
            return Err(CliError::malformed(
                path,
                format!("node {line} does not match the {} grid at band limit {}", grid.kind, grid.bandlimit),
            ));
        }
        values.extend(nums[prefix..].chunks(2).map(|p| Complex64::new(p[0], p[1])));
        rows += 1;
    }
    if rows != grid.len() {
        return Err(CliError::malformed(
            path,
            format!("{rows} rows, but the {} grid at band limit {} has {} nodes", grid.kind, grid.bandlimit, grid.len()),
        ));
    }
    Ok(GridFunction::new(grid.clone(), m, values)?)
}

/// `t,omega` knots for a tabulated weight.
pub fn read_weight_table(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    #[derive(Deserialize)]
    struct Knot {
        t: f64,
        omega: f64,
    }
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    reader
        .deserialize::<Knot>()
        .map(|r| r.map(|k| (k.t, k.omega)).map_err(|e| csv_error(path, e)))
        .collect()
}
