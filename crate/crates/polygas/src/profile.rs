//! Text profiles: macroscopic fields of a grid snapshot, one row per
//! cell, plus parsing and column-wise comparison.

use std::fmt::Write as _;
use std::path::Path;

use crate::dvm::{self, DvmGrid};
use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::moment::recover_macroscopic;
use crate::solver::Grid1D;

pub const BASE_COLUMNS: [&str; 8] = ["x", "rho", "u1", "t_tr", "t_int", "t_eq", "q1", "sigma11"];

/// A tabular profile with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Reference states used for the normalized shock-structure columns
/// `rho_hat`, `t_tr_hat`, `t_int_hat`.
#[derive(Debug, Clone, Copy)]
pub struct Normalization {
    pub rho_l: f64,
    pub rho_r: f64,
    pub t_l: f64,
    pub t_r: f64,
}

impl Profile {
    /// Extracts the macroscopic profile of a moment-solver grid.
    pub fn from_moment_grid(grid: &Grid1D, normalization: Option<Normalization>) -> Result<Self> {
        let mut rows = Vec::with_capacity(grid.n_cells());
        for (i, cell) in grid.cells.iter().enumerate() {
            let mac = recover_macroscopic(cell)?;
            let sigma11 = 2.0 * cell.get0([2, 0, 0]);
            let mut row = vec![
                grid.cell_center(i),
                mac.rho,
                mac.u[0],
                mac.t_tr,
                mac.t_int,
                mac.t_eq,
                mac.q1,
                sigma11,
            ];
            if let Some(n) = normalization {
                push_normalized(&mut row, n);
            }
            rows.push(row);
        }
        Ok(Self {
            columns: column_names(normalization.is_some()),
            rows,
        })
    }

    /// Extracts the macroscopic profile of a reference-solver grid.
    pub fn from_dvm_grid(
        grid: &DvmGrid,
        gas: &GasModel,
        normalization: Option<Normalization>,
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(grid.cells.len());
        for (i, cell) in grid.cells.iter().enumerate() {
            let mac = dvm::reduce_macroscopic(&grid.lattice, cell, gas)?;
            let dv = grid.lattice.dv;
            let mut q1 = 0.0;
            for (j, &v) in grid.lattice.nodes.iter().enumerate() {
                let c = v - mac.u1;
                q1 += (0.5 * c * c * c * cell.g[j] + c * cell.h1[j] + c * cell.h2[j]) * dv;
            }
            let sigma11 = mac.theta11 - mac.rho * gas.r * mac.t_tr;
            let mut row = vec![
                grid.cell_center(i),
                mac.rho,
                mac.u1,
                mac.t_tr,
                mac.t_int,
                mac.t_eq,
                q1,
                sigma11,
            ];
            if let Some(n) = normalization {
                push_normalized(&mut row, n);
            }
            rows.push(row);
        }
        Ok(Self {
            columns: column_names(normalization.is_some()),
            rows,
        })
    }

    /// Serializes to delimiter-separated text with `#` comment lines.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.columns.join("\t"));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }

    pub fn write(&self, path: &Path, comments: &[String]) -> Result<()> {
        std::fs::write(path, self.to_text(comments))?;
        Ok(())
    }

    /// Parses profile text written by [`Profile::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut columns = None;
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if columns.is_none() {
                columns = Some(
                    line.split_whitespace()
                        .map(str::to_owned)
                        .collect::<Vec<_>>(),
                );
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse::<f64>).collect();
            let row =
                row.map_err(|e| Error::Config(format!("profile line {}: {e}", lineno + 1)))?;
            let ncols = columns.as_ref().map_or(0, Vec::len);
            if row.len() != ncols {
                return Err(Error::Config(format!(
                    "profile line {}: expected {} columns, found {}",
                    lineno + 1,
                    ncols,
                    row.len()
                )));
            }
            rows.push(row);
        }
        let columns = columns.ok_or_else(|| Error::Config("profile has no header row".into()))?;
        Ok(Self { columns, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

fn column_names(normalized: bool) -> Vec<String> {
    let mut cols: Vec<String> = BASE_COLUMNS.iter().map(|s| s.to_string()).collect();
    if normalized {
        cols.extend(["rho_hat", "t_tr_hat", "t_int_hat"].map(String::from));
    }
    cols
}

fn push_normalized(row: &mut Vec<f64>, n: Normalization) {
    let rho = row[1];
    let t_tr = row[3];
    let t_int = row[4];
    row.push((rho - n.rho_l) / (n.rho_r - n.rho_l));
    row.push((t_tr - n.t_l) / (n.t_r - n.t_l));
    row.push((t_int - n.t_l) / (n.t_r - n.t_l));
}

/// Per-column L1 and Linf differences of two profiles.
#[derive(Debug, Clone)]
pub struct ColumnDiff {
    pub name: String,
    pub l1: f64,
    pub linf: f64,
}

/// Compares the shared columns of two profiles row by row.
pub fn compare(a: &Profile, b: &Profile) -> Result<Vec<ColumnDiff>> {
    if a.rows.len() != b.rows.len() {
        return Err(Error::Config(format!(
            "profiles have different row counts: {} vs {}",
            a.rows.len(),
            b.rows.len()
        )));
    }
    let mut diffs = Vec::new();
    for name in &a.columns {
        let (Some(ca), Some(cb)) = (a.column(name), b.column(name)) else {
            continue;
        };
        let mut l1 = 0.0f64;
        let mut linf = 0.0f64;
        for (x, y) in ca.iter().zip(&cb) {
            let d = (x - y).abs();
            l1 += d;
            linf = linf.max(d);
        }
        diffs.push(ColumnDiff {
            name: name.clone(),
            l1,
            linf,
        });
    }
    Ok(diffs)
}
