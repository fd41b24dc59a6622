//! File emission: fixed-header CSVs, `name = value` records and standalone
//! plotting scripts that read the CSVs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::grid::ComplexField;

/// Scientific notation with 16 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.15e}")
}

/// Column label fragment for a damping value: `-0.03` -> `lam0.03`.
pub fn lambda_label(lambda: f64) -> String {
    format!("lam{}", lambda.abs())
}

/// A CSV table with a fixed header. Cells are preformatted strings so integer
/// and boolean columns keep their natural form.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_floats(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| fmt_f64(v)).collect());
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.render())
    }
}

/// Flat `name = value` record, one entry per line.
#[derive(Debug, Clone, Default)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.text(key, fmt_f64(value))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.render())
    }
}

/// Parses a `name = value` record (blank lines and `[section]` headers are
/// skipped; section names prefix the keys as `section.name`).
pub fn parse_record(text: &str) -> Vec<(String, String)> {
    let mut section = String::new();
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.to_string();
            continue;
        }
        if let Some((k, v)) = line.split_once('=') {
            let key = if section.is_empty() { k.trim().to_string() } else { format!("{section}.{}", k.trim()) };
            out.push((key, v.trim().to_string()));
        }
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}

/// `x,re,im,density,phase` for every grid point.
pub fn state_table(psi: &ComplexField) -> CsvTable {
    let mut t = CsvTable::new(["x", "re", "im", "density", "phase"]);
    let grid = psi.grid();
    for (j, v) in psi.values().iter().enumerate() {
        t.push_floats(&[grid.x(j), v.re, v.im, v.norm_sqr(), v.arg()]);
    }
    t
}

/// Plot script for the population sweep: `|b_i|²` on top, `|b_g|²` below.
pub const FIG1_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Mode and condensate populations against time, one curve per damping value."""
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "fig1.csv"
with open(path) as fh:
    rows = list(csv.reader(fh))
header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
t = [r[0] for r in data]
styles = ["-", "--", "-.", ":"]
fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 7))
k = 0
for j, name in enumerate(header):
    if name.startswith("b") and not name.startswith("bg"):
        lam = name.split("_lam")[1]
        style = styles[k % len(styles)]
        top.plot(t, [r[j] for r in data], style, color="k", label=f"$\\Lambda = -{lam}$")
        g = header.index(f"bg2_lam{lam}")
        bottom.plot(t, [r[g] for r in data], style, color="k")
        k += 1
top.set_ylabel("$|b_i|^2$")
bottom.set_ylabel("$|b_g|^2$")
bottom.set_xlabel("$t\\,\\omega$")
top.legend()
fig.tight_layout()
fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
"#;

/// Plot script for the width sweep.
pub const FIG2_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Condensate width against time, one curve per damping value."""
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "fig2.csv"
with open(path) as fh:
    rows = list(csv.reader(fh))
header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
t = [r[0] for r in data]
styles = ["-", "--", "-.", ":"]
fig, ax = plt.subplots(figsize=(6, 4))
for k, name in enumerate(header[1:]):
    lam = name.split("_lam")[1]
    ax.plot(t, [r[k + 1] for r in data], styles[k % len(styles)], color="k", label=f"$\\Lambda = -{lam}$")
ax.set_xlabel("$t\\,\\omega$")
ax.set_ylabel("width $\\sigma_x$")
ax.legend()
fig.tight_layout()
fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
"#;
