//! On-disk layout of a code directory:
//!
//! * `hx.alist`, `hz.alist`: the CSS pair;
//! * `h1.alist`, `h2.alist`: factor matrices of a product code;
//! * `construction.json`: provenance;
//! * `report.json`: the last computed report.

use std::fs;
use std::path::{Path, PathBuf};

use qhgp_core::hypergraph::{Hypergraph, ProductHypergraph};
use qhgp_core::BinaryMatrix;

use crate::alist::{emit_alist, parse_alist};
use crate::error::{CliError, CliResult};
use crate::report::{Construction, Report};

pub const HX_FILE: &str = "hx.alist";
pub const HZ_FILE: &str = "hz.alist";
pub const H1_FILE: &str = "h1.alist";
pub const H2_FILE: &str = "h2.alist";
pub const CONSTRUCTION_FILE: &str = "construction.json";
pub const REPORT_FILE: &str = "report.json";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDir {
    pub h_x: BinaryMatrix,
    pub h_z: BinaryMatrix,
    /// `(H1, H2)` when the code is a product and the factors were saved.
    pub factors: Option<(BinaryMatrix, BinaryMatrix)>,
    pub construction: Option<Construction>,
}

impl CodeDir {
    pub fn product(&self) -> Option<ProductHypergraph> {
        self.factors.as_ref().map(|(h1, h2)| {
            ProductHypergraph::new(
                Hypergraph::from_incidence(h1.clone()),
                Hypergraph::from_incidence(h2.clone()),
            )
        })
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_matrix(path: &Path) -> CliResult<BinaryMatrix> {
    parse_alist(&read_text(path)?).map_err(|source| CliError::Alist {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_dir(dir: &Path) -> CliResult<CodeDir> {
    let h_x = read_matrix(&dir.join(HX_FILE))?;
    let h_z = read_matrix(&dir.join(HZ_FILE))?;
    let (p1, p2) = (dir.join(H1_FILE), dir.join(H2_FILE));
    let factors = if p1.is_file() && p2.is_file() {
        Some((read_matrix(&p1)?, read_matrix(&p2)?))
    } else {
        None
    };
    let cp = dir.join(CONSTRUCTION_FILE);
    let construction = if cp.is_file() { Some(read_json(&cp)?) } else { None };
    Ok(CodeDir {
        h_x,
        h_z,
        factors,
        construction,
    })
}

/// Reads `report.json` if the directory has one.
pub fn read_report(dir: &Path) -> CliResult<Option<Report>> {
    let path = dir.join(REPORT_FILE);
    if !path.is_file() {
        return Ok(None);
    }
    Report::from_json(&read_text(&path)?)
        .map(Some)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_dir(dir: &Path, code: &CodeDir) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    write_text(&dir.join(HX_FILE), &emit_alist(&code.h_x))?;
    write_text(&dir.join(HZ_FILE), &emit_alist(&code.h_z))?;
    if let Some((h1, h2)) = &code.factors {
        write_text(&dir.join(H1_FILE), &emit_alist(h1))?;
        write_text(&dir.join(H2_FILE), &emit_alist(h2))?;
    }
    if let Some(c) = &code.construction {
        let mut text = serde_json::to_string_pretty(c).expect("construction serializes");
        text.push('\n');
        write_text(&dir.join(CONSTRUCTION_FILE), &text)?;
    }
    Ok(())
}

pub fn write_report(dir: &Path, report: &Report) -> CliResult<PathBuf> {
    let path = dir.join(REPORT_FILE);
    write_text(&path, &report.to_json())?;
    Ok(path)
}
