use serde::{Deserialize, Serialize};

use super::spec::ScenarioBounds;
use crate::engine::{Degeneration, SpectralSequence};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriRecord {
    pub s: i64,
    pub t: i64,
    pub u: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DRecord {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub r: usize,
    pub entries: Vec<EntryRecord>,
    pub d_nonzero: Vec<DRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    /// `em`, `ls`, `prelude-em t=K` or `prelude-ls s=K`.
    pub name: String,
    pub pages: Vec<PageRecord>,
    pub degeneration: Degeneration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The comparison touches entries outside the certified region.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub field: String,
    pub bounds: ScenarioBounds,
    pub formal_model: bool,
    /// Whether the given CW structure of `Y` is minimal over the field.
    #[serde(default)]
    pub y_minimal: Option<bool>,
    pub tri: Vec<TriRecord>,
    pub sequences: Vec<SequenceRecord>,
    /// The serialized `MorphismAnalysis`, when the scenario has one.
    #[serde(default)]
    pub criteria: serde_json::Value,
    pub checks: Vec<CheckRecord>,
}

impl SequenceRecord {
    pub fn from_sequence(name: impl Into<String>, ss: &SpectralSequence) -> Self {
        let pages = ss
            .pages
            .iter()
            .filter(|p| p.r >= 1)
            .map(|p| PageRecord {
                r: p.r,
                entries: p.entries.iter().map(|e| EntryRecord { p: e.p, q: e.q, dim: e.dim, certified: e.certified }).collect(),
                d_nonzero: p.nonzero_differentials().map(|d| DRecord { from: d.from, to: d.to, rank: d.rank() }).collect(),
            })
            .collect();
        SequenceRecord { name: name.into(), pages, degeneration: ss.degeneration }
    }

    pub fn page(&self, r: usize) -> Option<&PageRecord> {
        self.pages.iter().find(|p| p.r == r)
    }
}

impl Report {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn sequence(&self, name: &str) -> Option<&SequenceRecord> {
        self.sequences.iter().find(|s| s.name == name)
    }

    /// No check failed outright.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}
