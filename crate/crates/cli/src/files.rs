//! On-disk formats: algebra files, matrix files and quadratic-structure
//! files. JSON, UTF-8, row-major `[i][j][k]` tables, floats written with 17
//! significant decimal digits so that every f64 round-trips bit-exactly.

use anyhow::{bail, Context, Result};
use nadiv_core::{Algebra, QuadraticStructure};
use nalgebra::DMatrix;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub provenance: Option<String>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
pub struct StructFile {
    pub vdim: usize,
    pub form: Vec<Vec<f64>>,
    pub wedge: Vec<Vec<Vec<f64>>>,
}

/// 17 significant decimal digits: enough to reproduce any f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_string_escaped(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

pub fn write_algebra_file(a: &Algebra) -> String {
    let n = a.dim();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"dim\": {n},");
    out.push_str("  \"basis\": [");
    for (i, l) in a.basis_labels().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        push_string_escaped(&mut out, l);
    }
    out.push_str("],\n");
    out.push_str("  \"table\": [\n");
    for i in 0..n {
        out.push_str("    [");
        for j in 0..n {
            if j > 0 {
                out.push_str(",\n     ");
            }
            out.push('[');
            for k in 0..n {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format_f64(a.c(i, j, k)));
            }
            out.push(']');
        }
        out.push(']');
        if i + 1 < n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ],\n");
    if let Some(p) = a.provenance() {
        out.push_str("  \"provenance\": ");
        push_string_escaped(&mut out, p);
        out.push_str(",\n");
    }
    let _ = writeln!(out, "  \"tolerance\": {}", format_f64(a.tolerance()));
    out.push_str("}\n");
    out
}

pub fn read_algebra(path: &Path) -> Result<Algebra> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read algebra file {}", path.display()))?;
    let file: AlgebraFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse algebra file {}", path.display()))?;
    algebra_from_file(file)
}

pub fn algebra_from_file(file: AlgebraFile) -> Result<Algebra> {
    let n = file.dim;
    if file.table.len() != n || file.table.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n)) {
        bail!("table shape is inconsistent with dim = {n}");
    }
    let mut c = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[(i * n + j) * n + k] = file.table[i][j][k];
            }
        }
    }
    let mut a = Algebra::new(n, file.basis, c, file.tolerance.unwrap_or(nadiv_core::DEFAULT_TOL))?;
    if let Some(p) = file.provenance {
        a = a.with_provenance(p);
    }
    Ok(a)
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file {}", path.display()))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse matrix file {}", path.display()))?;
    let rows = file.matrix.len();
    if rows == 0 {
        bail!("matrix file {} is empty", path.display());
    }
    let cols = file.matrix[0].len();
    if file.matrix.iter().any(|r| r.len() != cols) {
        bail!("matrix file {} has ragged rows", path.display());
    }
    Ok(DMatrix::from_fn(rows, cols, |r, c| file.matrix[r][c]))
}

pub fn read_struct(path: &Path) -> Result<QuadraticStructure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read structure file {}", path.display()))?;
    let file: StructFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse structure file {}", path.display()))?;
    let v = file.vdim;
    if file.form.len() != v || file.form.iter().any(|r| r.len() != v) {
        bail!("form shape inconsistent with vdim = {v}");
    }
    if file.wedge.len() != v || file.wedge.iter().any(|p| p.len() != v || p.iter().any(|r| r.len() != v)) {
        bail!("wedge shape inconsistent with vdim = {v}");
    }
    let form = DMatrix::from_fn(v, v, |r, c| file.form[r][c]);
    let mut wedge = vec![0.0; v * v * v];
    for p in 0..v {
        for q in 0..v {
            for k in 0..v {
                wedge[(p * v + q) * v + k] = file.wedge[p][q][k];
            }
        }
    }
    Ok(QuadraticStructure::new(v, form, wedge)?)
}
