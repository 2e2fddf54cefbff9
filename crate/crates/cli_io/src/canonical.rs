//! Canonical serialization and content hashes.
//!
//! A document is canonicalized by converting it to a `serde_json::Value` (object keys are kept
//! in sorted order) and printing it compactly. The content hash is the SHA-256 of those bytes.

use category_core::{DMatrix, DVector, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

pub const FORMAT_VERSION: u32 = 1;

pub fn canonical_bytes<T: Serialize>(doc: &T) -> Result<Vec<u8>> {
    let value = serde_json::to_value(doc).map_err(|e| CliError::Parse(e.to_string()))?;
    serde_json::to_vec(&value).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn content_hash_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn content_hash<T: Serialize>(doc: &T) -> Result<String> {
    Ok(content_hash_bytes(&canonical_bytes(doc)?))
}

/// A complex number as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complex(pub [f64; 2]);

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex([z.re, z.im])
    }
}

impl From<Complex> for C64 {
    fn from(z: Complex) -> Self {
        C64::new(z.0[0], z.0[1])
    }
}

pub fn vector_doc(v: &DVector<C64>) -> Vec<Complex> {
    v.iter().map(|&z| z.into()).collect()
}

pub fn vector_from(v: &[Complex]) -> DVector<C64> {
    DVector::from_iterator(v.len(), v.iter().map(|&z| z.into()))
}

/// A dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &DMatrix<C64>) -> Self {
        let entries = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)].into())).collect();
        MatrixDoc { rows: m.nrows(), cols: m.ncols(), entries }
    }

    pub fn to_matrix(&self) -> Result<DMatrix<C64>> {
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::Schema(format!("matrix {}x{} with {} entries", self.rows, self.cols, self.entries.len())));
        }
        Ok(DMatrix::from_fn(self.rows, self.cols, |i, j| self.entries[i * self.cols + j].into()))
    }
}

pub fn matrices_doc(ms: &[DMatrix<C64>]) -> Vec<MatrixDoc> {
    ms.iter().map(MatrixDoc::from_matrix).collect()
}

pub fn matrices_from(ms: &[MatrixDoc]) -> Result<Vec<DMatrix<C64>>> {
    ms.iter().map(MatrixDoc::to_matrix).collect()
}

/// `f64` fields that may be non-finite: written as `null`, read back as `+∞`.
pub mod lossy_f64 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}
