//! Structure files, report files and mutation corpora.
//!
//! Structure files store one hex string per line of the structure. Row `i`
//! is read as a binary number whose bit `j` is the incidence of lines `i`
//! and `j`, printed with exactly `⌈n/4⌉` lowercase digits, so bit 0 is the
//! least significant bit of the last digit.

mod mutate;

pub use mutate::{
    generate_mutants, replay_manifest, write_corpus, Manifest, ManifestEntry, Mutant,
};

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::AuditReport;
use crate::incidence::{IncidenceStructure, StructureError};
use crate::lineset::LineSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed file: {0}")]
    Schema(String),
    #[error("invalid structure: {0}")]
    Structure(#[from] StructureError),
}

impl FormatError {
    fn io(path: &Path, source: std::io::Error) -> FormatError {
        FormatError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Input problems (as opposed to I/O failures).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, FormatError::Io { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub labels: Vec<String>,
    pub incidence_rows: Vec<String>,
}

pub fn encode_row(row: &LineSet) -> String {
    let n = row.universe();
    let digits = n.div_ceil(4);
    (0..digits)
        .map(|k| {
            let nibble = digits - 1 - k;
            let value = (0..4).fold(0u32, |acc, b| {
                acc | (row.contains(4 * nibble + b) as u32) << b
            });
            char::from_digit(value, 16).unwrap()
        })
        .collect()
}

pub fn decode_row(text: &str, n: usize) -> Result<LineSet, FormatError> {
    let digits = n.div_ceil(4);
    if text.len() != digits {
        return Err(FormatError::Schema(format!(
            "row {text:?} has {} hex digits, expected {digits}",
            text.len()
        )));
    }
    let mut row = LineSet::empty(n);
    for (k, ch) in text.chars().enumerate() {
        let value = ch
            .to_digit(16)
            .ok_or_else(|| FormatError::Schema(format!("invalid hex digit {ch:?}")))?;
        let nibble = digits - 1 - k;
        for b in 0..4 {
            if value >> b & 1 == 1 {
                let bit = 4 * nibble + b;
                if bit >= n {
                    return Err(FormatError::Schema(format!(
                        "padding bit {bit} set in row {text:?}"
                    )));
                }
                row.insert(bit);
            }
        }
    }
    Ok(row)
}

impl StructureFile {
    pub fn from_structure(s: &IncidenceStructure, q: Option<u32>) -> StructureFile {
        StructureFile {
            format_version: FORMAT_VERSION,
            q,
            labels: s.labels().to_vec(),
            incidence_rows: s.rows().iter().map(encode_row).collect(),
        }
    }

    /// Validates the version, the matrix shape and the relation.
    pub fn to_structure(&self) -> Result<IncidenceStructure, FormatError> {
        if self.format_version != FORMAT_VERSION {
            return Err(FormatError::Schema(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let n = self.incidence_rows.len();
        if self.labels.len() != n {
            return Err(FormatError::Schema(format!(
                "{} labels for {n} rows",
                self.labels.len()
            )));
        }
        let rows = self
            .incidence_rows
            .iter()
            .map(|r| decode_row(r, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IncidenceStructure::new(self.labels.clone(), rows)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("structure files serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<StructureFile, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<StructureFile, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
        StructureFile::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), FormatError> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

/// Loads and validates a structure file.
pub fn load_structure(path: &Path) -> Result<(IncidenceStructure, StructureFile), FormatError> {
    let file = StructureFile::load(path)?;
    let s = file.to_structure()?;
    Ok((s, file))
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| FormatError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| FormatError::io(path, e))?;
    tmp.persist(path)
        .map_err(|e| FormatError::io(path, e.error))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub name: String,
    pub status: String,
    pub cases_checked: u64,
    pub witness: Option<Vec<String>>,
    pub witness_role: Option<String>,
    pub elapsed_ms: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub structure_digest: String,
    pub profile: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub overall: String,
    pub items: Vec<ReportItem>,
}

impl ReportFile {
    /// Witnesses are written as line labels.
    pub fn from_report(s: &IncidenceStructure, report: &AuditReport) -> ReportFile {
        let seed = match report.profile {
            crate::audit::Profile::Full => None,
            crate::audit::Profile::Fast { seed } => Some(seed),
        };
        ReportFile {
            format_version: FORMAT_VERSION,
            structure_digest: report.digest.clone(),
            profile: report.profile.name().to_owned(),
            seed,
            overall: report.overall().as_str().to_owned(),
            items: report
                .items
                .iter()
                .map(|item| ReportItem {
                    name: item.name.clone(),
                    status: item.status.as_str().to_owned(),
                    cases_checked: item.cases_checked,
                    witness: item.witness.as_ref().map(|w| s.labels_of(&w.lines)),
                    witness_role: item.witness.as_ref().map(|w| w.role.clone()),
                    elapsed_ms: item.elapsed.as_millis() as u64,
                    notes: item.notes.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report files serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<ReportFile, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::Schema(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), FormatError> {
        write_atomic(path, self.to_json().as_bytes())
    }

    /// Copy with every `elapsed_ms` zeroed, for run-to-run comparison.
    pub fn without_timings(&self) -> ReportFile {
        let mut copy = self.clone();
        for item in &mut copy.items {
            item.elapsed_ms = 0;
        }
        copy
    }
}
