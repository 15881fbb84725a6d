//! CSV angle ingestion: one angle column, optional header, radians or
//! degrees on input. Output is always radians.

use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Unit {
    Radians,
    Degrees,
}

/// Read the angle column of a CSV file into radians.
pub fn read_angles(
    path: &Path,
    column: Option<&str>,
    unit: Unit,
    header: bool,
) -> Result<Vec<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;

    // Column selector: a header name (requires --header) or a 0-based index.
    let index = match column {
        None => 0,
        Some(c) => {
            if let Ok(i) = c.parse::<usize>() {
                i
            } else if header {
                reader
                    .headers()
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                    .iter()
                    .position(|h| h == c)
                    .ok_or_else(|| {
                        CliError::Input(format!("{}: no column named '{c}'", path.display()))
                    })?
            } else {
                return Err(CliError::Input(format!(
                    "column '{c}' is a name but the file was read without --header"
                )));
            }
        }
    };

    let mut angles = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let cell = rec.get(index).ok_or_else(|| {
            CliError::Input(format!("{}: row {} has no column {index}", path.display(), row + 1))
        })?;
        let v: f64 = cell.parse().map_err(|_| {
            CliError::Input(format!("{}: row {}: '{cell}' is not a number", path.display(), row + 1))
        })?;
        if !v.is_finite() {
            return Err(CliError::Input(format!(
                "{}: row {}: non-finite angle {v}",
                path.display(),
                row + 1
            )));
        }
        angles.push(match unit {
            Unit::Radians => v,
            Unit::Degrees => v.to_radians(),
        });
    }
    if angles.is_empty() {
        return Err(CliError::Input(format!("{}: no angles found", path.display())));
    }
    Ok(angles)
}
