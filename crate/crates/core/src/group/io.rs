//! Group input files.
//!
//! * Cayley-table file: JSON `{"order": N, "table": [[...]], "names": [...]}`;
//!   `names` is optional, rows are listed in element order.
//! * Generator file: either a JSON array of cycle-notation strings, or plain
//!   text with one generator per line (`#` starts a comment).
//!
//! See `docs/formats.md` for the exact grammar.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Group, Perm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TableFile {
    pub fn from_group(g: &Group) -> Self {
        TableFile {
            order: g.order(),
            table: g.table(),
            names: Some(g.names().to_vec()),
        }
    }

    pub fn into_group(self) -> Result<Group> {
        if self.order != self.table.len() {
            return Err(Error::NotAGroup(format!(
                "declared order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        Group::from_cayley_table(&self.table, self.names)
    }
}

pub fn parse_table(text: &str) -> Result<Group> {
    let file: TableFile = serde_json::from_str(text)?;
    file.into_group()
}

pub fn read_table(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    Ok(parse_table(&text)?.with_label(format!("table:{stem}")))
}

pub fn parse_generators(text: &str) -> Result<Vec<Perm>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let strings: Vec<String> = serde_json::from_str(trimmed)?;
        return strings.iter().map(|s| s.parse()).collect();
    }
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::parse)
        .collect()
}

pub fn read_generators(path: &Path, cap: usize) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let gens = parse_generators(&text)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("generators");
    Ok(Group::from_permutations(&gens, cap)?.with_label(format!("generators:{stem}")))
}
