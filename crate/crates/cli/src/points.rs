use std::fs;
use std::path::Path;

use ndist_core::{Point, PointSet};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// JSON point file.
#[derive(Debug, Deserialize, Serialize)]
pub struct PointFile {
    pub q: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<f64>>,
}

/// Coordinates read from a point file, before any role is assigned.
pub struct Loaded {
    pub rows: Vec<Vec<f64>>,
    pub z: Option<Vec<f64>>,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('{');
    if is_json {
        let file: PointFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid JSON point file: {e}", path.display())))?;
        for (i, p) in file.points.iter().chain(file.z.iter()).enumerate() {
            if p.len() != file.q {
                return Err(CliError::Usage(format!(
                    "{}: entry {} has {} coordinates but q = {}",
                    path.display(),
                    i + 1,
                    p.len(),
                    file.q
                )));
            }
        }
        Ok(Loaded { rows: file.points, z: file.z })
    } else {
        Ok(Loaded { rows: parse_csv(&text, path)?, z: None })
    }
}

fn parse_csv(text: &str, path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            // A non-numeric first row is a header.
            Err(_) if line == 0 => continue,
            Err(e) => {
                return Err(CliError::Usage(format!(
                    "{}: row {}: {e}",
                    path.display(),
                    line + 1
                )))
            }
        }
    }
    Ok(rows)
}

pub fn point_set(rows: Vec<Vec<f64>>) -> Result<PointSet, CliError> {
    let points = rows.into_iter().map(Point::new).collect::<ndist_core::Result<Vec<_>>>()?;
    Ok(PointSet::new(points)?)
}

pub fn parse_coords(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("invalid coordinates '{s}': {e}")))
}

/// `x` with 17 significant digits, without trailing zeros.
pub fn real(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn coords(p: &Point) -> String {
    p.coords().iter().map(|&c| real(c)).collect::<Vec<_>>().join(" ")
}

/// Points as "(x y) (x y) …".
pub fn point_list<'a>(points: impl IntoIterator<Item = &'a Point>) -> String {
    points.into_iter().map(|p| format!("({})", coords(p))).collect::<Vec<_>>().join(" ")
}
