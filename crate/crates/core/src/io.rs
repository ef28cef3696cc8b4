//! Structure-tensor JSON files.
//!
//! ```json
//! {"dim": 3, "dim_v1": 2, "entries": [{"i": 1, "j": 2, "k": 3, "value": "1"}]}
//! ```
//!
//! Only `i < j` entries are allowed; the antisymmetric partners are implied.
//! Values are rational strings (`"p"` or `"p/q"`), explicit zeros and
//! duplicate triples are errors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};
use crate::tensor::{StructureTensor, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub dim: usize,
    pub dim_v1: usize,
    pub entries: Vec<EntryRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

impl TensorFile {
    pub fn from_tensor(tensor: &StructureTensor) -> Self {
        TensorFile {
            dim: tensor.dim(),
            dim_v1: tensor.dim_v1(),
            entries: tensor
                .upper_entries()
                .map(|(t, v)| EntryRecord { i: t.i, j: t.j, k: t.k, value: format_rational(v) })
                .collect(),
        }
    }

    pub fn into_tensor(self) -> Result<StructureTensor> {
        let entries = self
            .entries
            .into_iter()
            .map(|e| Ok((Triple::new(e.i, e.j, e.k), parse_rational(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        StructureTensor::from_upper_entries(self.dim, self.dim_v1, entries)
    }
}

pub fn parse_tensor_json(text: &str) -> Result<StructureTensor> {
    let file: TensorFile = serde_json::from_str(text).map_err(|e| Error::Schema(format!("tensor JSON: {e}")))?;
    file.into_tensor()
}

pub fn tensor_to_json(tensor: &StructureTensor) -> String {
    let mut s = serde_json::to_string_pretty(&TensorFile::from_tensor(tensor)).expect("tensor file serializes");
    s.push('\n');
    s
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<StructureTensor> {
    parse_tensor_json(&std::fs::read_to_string(path)?)
}

pub fn write_tensor(path: impl AsRef<Path>, tensor: &StructureTensor) -> Result<()> {
    std::fs::write(path, tensor_to_json(tensor))?;
    Ok(())
}
