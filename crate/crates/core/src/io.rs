//! JSON file formats for matrices and inverse-eigenproblem instances.
//!
//! A matrix file is `{"rows": m, "cols": n, "data": [[w, x, y, z], ...]}` with
//! the entries in row-major order. Floats are written in shortest round-trip
//! form, so write-then-read reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse_eig::SpectralData;
use crate::qmatrix::QuaternionMatrix;
use crate::quat::{Quaternion, StandardEigenvalue};
use crate::structures::StructureClass;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 4]>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<QuaternionMatrix> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Format(format!(
                "{} entries for a {}x{} matrix",
                self.data.len(),
                self.rows,
                self.cols
            )));
        }
        QuaternionMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|&c| Quaternion::from_array(c)).collect(),
        )
        .map_err(|e| Error::Format(e.to_string()))
    }
}

impl From<&QuaternionMatrix> for MatrixFile {
    fn from(m: &QuaternionMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.iter().map(|q| q.to_array()).collect(),
        }
    }
}

/// An inverse-eigenproblem instance, optionally with a target `E` and the
/// free parameters `W1`, `W2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "P")]
    pub p: MatrixFile,
    #[serde(rename = "Q")]
    pub q: MatrixFile,
    #[serde(rename = "Z")]
    pub z: MatrixFile,
    /// `[re, im]` with `im ≥ 0`.
    pub lambda: Vec<[f64; 2]>,
    pub class: String,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<MatrixFile>,
    #[serde(rename = "W1", default, skip_serializing_if = "Option::is_none")]
    pub w1: Option<MatrixFile>,
    #[serde(rename = "W2", default, skip_serializing_if = "Option::is_none")]
    pub w2: Option<MatrixFile>,
}

impl ProblemFile {
    pub fn new(
        p: &QuaternionMatrix,
        q: &QuaternionMatrix,
        data: &SpectralData,
        class: StructureClass,
    ) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
            z: data.z().into(),
            lambda: data.lambdas().iter().map(|l| [l.re, l.im]).collect(),
            class: class.as_str().to_string(),
            e: None,
            w1: None,
            w2: None,
        }
    }

    pub fn class(&self) -> Result<StructureClass> {
        self.class.parse().map_err(|e: Error| Error::Format(e.to_string()))
    }

    pub fn spectral_data(&self) -> Result<SpectralData> {
        let z = self.z.to_matrix()?;
        let lambdas = self
            .lambda
            .iter()
            .map(|&[re, im]| StandardEigenvalue::new(re, im))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Format(e.to_string()))?;
        SpectralData::new(z, lambdas).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn matrix_from_json(text: &str) -> Result<QuaternionMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_matrix()
}

pub fn matrix_to_json(m: &QuaternionMatrix) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&MatrixFile::from(m))?;
    s.push('\n');
    Ok(s)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<QuaternionMatrix> {
    matrix_from_json(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &QuaternionMatrix) -> Result<()> {
    fs::write(path, matrix_to_json(m)?)?;
    Ok(())
}
