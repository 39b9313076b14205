//! Instance files: the on-disk JSON format for orientations.
//!
//! ```json
//! {
//!   "n": 3,
//!   "matrix": ["100", "110", "111"],
//!   "sink": "010",
//!   "branching": [0, 1, 2]
//! }
//! ```
//!
//! Rows are '0'/'1' strings with dimension 1 leftmost. The optional
//! `branching` field records the generating parent array (0 = root) for
//! realizable instances and must match the matrix when present.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dig::Branching;
use crate::gf2::{BitMatrix, BitVec};
use crate::uso::MatousekUso;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub matrix: BitMatrix,
    pub sink: BitVec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branching: Option<Vec<usize>>,
}

impl InstanceFile {
    #[must_use]
    pub fn from_uso(uso: &MatousekUso, branching: Option<&Branching>) -> Self {
        Self {
            n: uso.n(),
            matrix: uso.matrix().clone(),
            sink: uso.sink().clone(),
            branching: branching.map(|b| b.parents().to_vec()),
        }
    }

    /// Validates the file contents and builds the instance.
    pub fn to_uso(&self) -> Result<MatousekUso, InstanceError> {
        if self.matrix.rows() != self.n || self.matrix.cols() != self.n {
            return Err(InstanceError::Invalid(format!(
                "matrix is {}x{}, expected {}x{}",
                self.matrix.rows(),
                self.matrix.cols(),
                self.n,
                self.n
            )));
        }
        let uso = MatousekUso::new(self.matrix.clone(), self.sink.clone())
            .map_err(|e| InstanceError::Invalid(e.to_string()))?;
        if let Some(parents) = &self.branching {
            let b = Branching::from_parents(parents.clone())
                .map_err(|e| InstanceError::Invalid(e.to_string()))?;
            if b.closure().adj() != uso.matrix() {
                return Err(InstanceError::Invalid(
                    "branching does not generate the stored matrix".into(),
                ));
            }
        }
        Ok(uso)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), InstanceError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let (uso, branching) = MatousekUso::random_realizable(5, 11);
        let file = InstanceFile::from_uso(&uso, Some(&branching));
        let json = file.to_json();
        let back = InstanceFile::from_json(&json).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_uso().unwrap(), uso);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn rejects_mismatched_branching() {
        let (uso, _) = MatousekUso::random_realizable(3, 5);
        let mut file = InstanceFile::from_uso(&uso, None);
        file.branching = Some(vec![0, 0, 0]);
        if uso.matrix() != Branching::trivial(3).closure().adj() {
            assert!(file.to_uso().is_err());
        }
    }

    #[test]
    fn rejects_illegal_matrix() {
        let json = r#"{ "n": 2, "matrix": ["10", "00"], "sink": "00" }"#;
        let file = InstanceFile::from_json(json).unwrap();
        assert!(file.to_uso().is_err());
    }
}
