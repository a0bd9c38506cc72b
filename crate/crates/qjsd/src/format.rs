//! Text file formats (JSON).
//!
//! Matrix file:
//!
//! ```json
//! { "dim": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]] }
//! ```
//!
//! Point-set file, either Bloch triples or matrix records:
//!
//! ```json
//! { "bloch": [[0, 0, 1], [1, 0, 0]] }
//! { "matrices": [ { "dim": 2, "re": ..., "im": ... }, ... ] }
//! ```

use std::path::Path;

use qjsd_core::qubit::{BlochVector, PointSet};
use qjsd_core::spectral::{DensityMatrix, HermitianMatrix, PsdMatrix};
use qjsd_core::CMatrix;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// On-disk matrix record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    /// Dimension.
    pub dim: usize,
    /// Real parts, row-major rows.
    pub re: Vec<Vec<f64>>,
    /// Imaginary parts, row-major rows.
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    /// Record of a square matrix.
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.rows();
        Self {
            dim: n,
            re: (0..n).map(|r| (0..n).map(|c| m[(r, c)].re).collect()).collect(),
            im: (0..n).map(|r| (0..n).map(|c| m[(r, c)].im).collect()).collect(),
        }
    }

    fn check_field(&self, name: &str, rows: &[Vec<f64>]) -> Result<()> {
        if rows.len() != self.dim {
            return Err(CliError::Input(format!(
                "field `{name}`: expected {} rows, found {}",
                self.dim,
                rows.len()
            )));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != self.dim {
                return Err(CliError::Input(format!(
                    "field `{name}`: row {i} has {} entries, expected {}",
                    r.len(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// Validated dense matrix.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.dim == 0 {
            return Err(CliError::Input("field `dim`: must be at least 1".into()));
        }
        self.check_field("re", &self.re)?;
        self.check_field("im", &self.im)?;
        let re: Vec<f64> = self.re.concat();
        let im: Vec<f64> = self.im.concat();
        Ok(CMatrix::from_parts(self.dim, &re, &im)?)
    }

    /// Validated Hermitian matrix.
    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::new(self.to_matrix()?).map_err(|e| CliError::Input(format!("matrix: {e}")))
    }

    /// Validated PSD matrix.
    pub fn to_psd(&self) -> Result<PsdMatrix> {
        PsdMatrix::new(self.to_hermitian()?).map_err(|e| CliError::Input(format!("matrix: {e}")))
    }

    /// Validated density matrix.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_psd()?).map_err(|e| CliError::Input(format!("matrix: {e}")))
    }
}

/// On-disk point set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    /// Bloch triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<Vec<[f64; 3]>>,
    /// Matrix records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixFile>>,
}

impl PointSetFile {
    /// Record of Bloch vectors.
    pub fn from_bloch(points: &[BlochVector]) -> Self {
        Self {
            bloch: Some(points.iter().map(|p| p.components()).collect()),
            matrices: None,
        }
    }

    /// Validated point set with at least two points.
    pub fn to_point_set(&self) -> Result<PointSet> {
        let ps = match (&self.bloch, &self.matrices) {
            (Some(b), None) => PointSet::Bloch(
                b.iter()
                    .enumerate()
                    .map(|(i, r)| BlochVector::new(*r).map_err(|e| CliError::Input(format!("field `bloch`[{i}]: {e}"))))
                    .collect::<Result<_>>()?,
            ),
            (None, Some(ms)) => {
                let dens: Vec<DensityMatrix> = ms
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        m.to_density()
                            .map_err(|e| CliError::Input(format!("field `matrices`[{i}]: {e}")))
                    })
                    .collect::<Result<_>>()?;
                if let Some(d) = dens.iter().find(|d| d.dim() != dens[0].dim()) {
                    return Err(CliError::Input(format!(
                        "field `matrices`: mixed dimensions {} and {}",
                        dens[0].dim(),
                        d.dim()
                    )));
                }
                PointSet::Densities(dens)
            }
            _ => {
                return Err(CliError::Input(
                    "point set needs exactly one of `bloch` or `matrices`".into(),
                ))
            }
        };
        if ps.len() < 2 {
            return Err(CliError::Input("point set needs at least 2 points".into()));
        }
        Ok(ps)
    }

    /// Matrix records as PSD matrices of any trace, or `None` for a Bloch set.
    pub fn cone_points(&self) -> Result<Option<Vec<PsdMatrix>>> {
        let Some(ms) = &self.matrices else {
            return Ok(None);
        };
        if self.bloch.is_some() {
            return Err(CliError::Input(
                "point set needs exactly one of `bloch` or `matrices`".into(),
            ));
        }
        let pts: Vec<PsdMatrix> = ms
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.to_psd()
                    .map_err(|e| CliError::Input(format!("field `matrices`[{i}]: {e}")))
            })
            .collect::<Result<_>>()?;
        if let Some(d) = pts.iter().find(|d| d.dim() != pts[0].dim()) {
            return Err(CliError::Input(format!(
                "field `matrices`: mixed dimensions {} and {}",
                pts[0].dim(),
                d.dim()
            )));
        }
        if pts.len() < 2 {
            return Err(CliError::Input("point set needs at least 2 points".into()));
        }
        Ok(Some(pts))
    }
}

/// Parses a JSON document, naming the file in errors.
pub fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

/// Reads a matrix file.
pub fn read_matrix(path: &Path) -> Result<MatrixFile> {
    read(path)
}

/// Reads a point-set file.
pub fn read_point_set(path: &Path) -> Result<PointSetFile> {
    read(path)
}

/// Pretty JSON, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        let m = MatrixFile {
            dim: 2,
            re: vec![vec![0.5, 0.1], vec![0.1, 0.5]],
            im: vec![vec![0.0, -0.2], vec![0.2, 0.0]],
        };
        let text = to_json(&m);
        let back: MatrixFile = parse(&text, "m").unwrap();
        assert_eq!(back, m);
        assert!(back.to_density().is_ok());
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse::<MatrixFile>(r#"{"dim": 2, "re": [[1,0],[0,1]]}"#, "x").unwrap_err();
        assert!(e.to_string().contains("`im`"), "{e}");
        let m: MatrixFile = parse(r#"{"dim": 2, "re": [[1,0],[0,1]], "im": [[0,0]]}"#, "x").unwrap();
        let e = m.to_matrix().unwrap_err();
        assert!(e.to_string().contains("field `im`"), "{e}");
        let m: MatrixFile = parse(r#"{"dim": 2, "re": [[1,0],[0,-1]], "im": [[0,0],[0,0]]}"#, "x").unwrap();
        assert!(m.to_psd().is_err());
        let m: MatrixFile = parse(r#"{"dim": 2, "re": [[1,1],[0,1]], "im": [[0,0],[0,0]]}"#, "x").unwrap();
        assert!(m.to_hermitian().unwrap_err().to_string().contains("not Hermitian"));
    }

    #[test]
    fn point_set_variants() {
        let ps: PointSetFile = parse(r#"{"bloch": [[0,0,1],[1,0,0]]}"#, "p").unwrap();
        assert_eq!(ps.to_point_set().unwrap().len(), 2);
        let ps: PointSetFile = parse(r#"{"bloch": [[0,0,1]]}"#, "p").unwrap();
        assert!(ps.to_point_set().is_err());
        let ps: PointSetFile = parse(r#"{"bloch": [[0,0,2],[0,0,1]]}"#, "p").unwrap();
        assert!(ps.to_point_set().unwrap_err().to_string().contains("`bloch`[0]"));
        let ps: PointSetFile = parse(r#"{}"#, "p").unwrap();
        assert!(ps.to_point_set().is_err());
    }
}
