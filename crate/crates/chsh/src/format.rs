//! JSON state files.
//!
//! Density matrices are stored as `{"re": [[...]], "im": [[...]]}`, each a
//! row-major 4x4 array; `im` may be omitted for real matrices, and a flat or
//! singly wrapped list of 16 numbers is also accepted on input. Pure states
//! are stored as `{"amplitudes": [[re, im], ...]}` in the basis
//! `|00>, |01>, |10>, |11>`.

use std::fs;
use std::path::Path;

use chsh_core::qmat::{Matrix4, Tolerances};
use chsh_core::states::{DensityMatrix, PureState};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// A validated state read from disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateInput {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl StateInput {
    pub fn density(&self) -> DensityMatrix {
        match self {
            Self::Pure(psi) => psi.density(),
            Self::Mixed(rho) => *rho,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Grid {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityFile {
    re: Grid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Grid>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureFile {
    amplitudes: Vec<[f64; 2]>,
}

fn format_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Format { path: path.to_path_buf(), message: message.into() }
}

fn grid_to_array(grid: &Grid, field: &str, path: &Path) -> Result<[[f64; 4]; 4], CliError> {
    let flat: Vec<f64> = match grid {
        Grid::Flat(v) => v.clone(),
        Grid::Nested(rows) if rows.len() == 1 => rows[0].clone(),
        Grid::Nested(rows) => {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(format_error(path, format!("`{field}` must be a 4x4 array")));
            }
            rows.concat()
        }
    };
    if flat.len() != 16 {
        return Err(format_error(path, format!("`{field}` must hold 16 numbers, found {}", flat.len())));
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| flat[4 * i + j])))
}

/// Parse a state from JSON text; `path` is only used in messages.
pub fn parse_state(text: &str, path: &Path, tol: &Tolerances) -> Result<StateInput, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
    let json_err = |source| CliError::Json { path: path.to_path_buf(), source };
    let context = path.display().to_string();
    if value.get("amplitudes").is_some() {
        let file: PureFile = serde_json::from_value(value).map_err(json_err)?;
        if file.amplitudes.len() != 4 {
            return Err(format_error(path, format!("expected 4 amplitudes, found {}", file.amplitudes.len())));
        }
        let amps = std::array::from_fn(|k| Complex64::new(file.amplitudes[k][0], file.amplitudes[k][1]));
        let psi = PureState::new(amps).map_err(|e| CliError::invalid(context, e))?;
        Ok(StateInput::Pure(psi))
    } else if value.get("re").is_some() {
        let file: DensityFile = serde_json::from_value(value).map_err(json_err)?;
        let re = grid_to_array(&file.re, "re", path)?;
        let im = match &file.im {
            Some(g) => grid_to_array(g, "im", path)?,
            None => [[0.0; 4]; 4],
        };
        let rho =
            DensityMatrix::validate(&Matrix4::from_parts(re, im), tol).map_err(|e| CliError::invalid(context, e))?;
        Ok(StateInput::Mixed(rho))
    } else {
        Err(format_error(path, "expected an object with `re`/`im` or `amplitudes`"))
    }
}

pub fn read_state(path: &Path, tol: &Tolerances) -> Result<StateInput, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_state(&text, path, tol)
}

/// Serialize a state in the file format, with shortest round-trip floats.
pub fn state_to_json(state: &StateInput) -> String {
    let text = match state {
        StateInput::Pure(psi) => serde_json::to_string_pretty(&PureFile {
            amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }),
        StateInput::Mixed(rho) => {
            let m = rho.matrix();
            let nested = |a: [[f64; 4]; 4]| Grid::Nested(a.iter().map(|r| r.to_vec()).collect());
            serde_json::to_string_pretty(&DensityFile { re: nested(m.real_parts()), im: Some(nested(m.imag_parts())) })
        }
    };
    text.unwrap_or_else(|e| unreachable!("state serialization cannot fail: {e}"))
}

pub fn write_state(path: &Path, state: &StateInput) -> Result<(), CliError> {
    fs::write(path, state_to_json(state) + "\n").map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
