//! The JSON state-file schema:
//!
//! ```json
//! { "schema": 1, "d1": 2, "d2": 2, "matrix": [[re, im], ...] }
//! ```
//!
//! `matrix` holds the (d1·d2)² entries row-major. The writer emits 17
//! significant digits so a written state re-ingests to the identical
//! doubles.

use std::path::Path;

use eofkit::qstate::{BipartiteDims, DensityMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::{CliError, CliResult};

pub const STATE_SCHEMA: u32 = 1;

#[derive(Deserialize)]
struct StateFile {
    schema: u32,
    d1: usize,
    d2: usize,
    matrix: Vec<[f64; 2]>,
}

/// Parse and validate a state file; the error message names the violated
/// invariant.
pub fn read_state(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_state(text: &str) -> Result<DensityMatrix, String> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    if file.schema != STATE_SCHEMA {
        return Err(format!(
            "unsupported schema {} (expected {STATE_SCHEMA})",
            file.schema
        ));
    }
    let dims = BipartiteDims::new(file.d1, file.d2).map_err(|e| e.to_string())?;
    let n = dims.total();
    if file.matrix.len() != n * n {
        return Err(format!(
            "matrix has {} entries, dims {}x{} require {}",
            file.matrix.len(),
            file.d1,
            file.d2,
            n * n
        ));
    }
    let entries = DMatrix::from_fn(n, n, |i, j| {
        let [re, im] = file.matrix[i * n + j];
        Complex64::new(re, im)
    });
    for z in entries.iter() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err("matrix contains a non-finite entry".into());
        }
    }
    DensityMatrix::new(entries, dims).map_err(|e| e.to_string())
}

/// Serialize a state with full double precision (17 significant digits).
pub fn state_to_json(rho: &DensityMatrix) -> String {
    let dims = rho.dims();
    let n = dims.total();
    let mut out = String::with_capacity(64 * n * n);
    out.push_str(&format!(
        "{{\n  \"schema\": {STATE_SCHEMA},\n  \"d1\": {},\n  \"d2\": {},\n  \"matrix\": [\n",
        dims.d1, dims.d2
    ));
    for i in 0..n {
        for j in 0..n {
            let z = rho.entries()[(i, j)];
            out.push_str(&format!("    [{:.16e},{:.16e}]", z.re, z.im));
            if i * n + j + 1 < n * n {
                out.push(',');
            }
            out.push('\n');
        }
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> CliResult<()> {
    std::fs::write(path, state_to_json(rho))
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}
