//! The structured output record: one self-contained JSON document per
//! invocation, carrying the tool version, the full configuration (seeds
//! included), every computed table, and every check verdict. Field layout is
//! pinned by schema/output.schema.json.

use eds_core::cartan::CharacterTable;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool: ToolInfo,
    pub command: String,
    pub config: ConfigRecord,
    pub results: Vec<TableRecord>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "eds".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub model: Option<String>,
    pub n: Option<usize>,
    pub eds_path: Option<String>,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub range: i64,
    pub modular_check: bool,
    pub signature: String,
    pub point_mode: String,
    pub budget: u64,
    pub format: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRecord {
    pub model: String,
    #[serde(rename = "N")]
    pub dim: usize,
    pub n: usize,
    pub characters: Vec<usize>,
    pub gauge: usize,
    pub cartan_ok: bool,
    pub seeds: Vec<u64>,
    pub agreement: bool,
    pub notation: String,
}

impl TableRecord {
    pub fn from_table(model: impl Into<String>, t: &CharacterTable) -> Self {
        TableRecord {
            model: model.into(),
            dim: t.dim,
            n: t.n,
            characters: t.s.clone(),
            gauge: t.gauge,
            cartan_ok: t.cartan_ok,
            seeds: t.seeds.clone(),
            agreement: t.agreement,
            notation: t.notation(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// pass | fail | skipped | unverified | info
    pub status: String,
    pub detail: String,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: "pass".into(),
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: "fail".into(),
            detail: detail.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: "skipped".into(),
            detail: detail.into(),
        }
    }

    pub fn unverified(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: "unverified".into(),
            detail: detail.into(),
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: "info".into(),
            detail: detail.into(),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
    }
}
