//! Seeded corpora of single-pair incidence flips.

use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{write_atomic, FormatError, StructureFile, FORMAT_VERSION};
use crate::incidence::{IncidenceStructure, LineId};

#[derive(Debug, Clone)]
pub struct Mutant {
    pub index: usize,
    pub flip: (LineId, LineId),
    pub structure: IncidenceStructure,
}

/// Unordered pair number `k` among the pairs `i < j` of `n` lines.
fn pair_at(n: usize, mut k: usize) -> (LineId, LineId) {
    for i in 0..n {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

/// `count` mutants of `s`, each toggling the incidence of one distinct
/// unordered pair of distinct lines. Pairs are drawn without replacement.
pub fn generate_mutants(
    s: &IncidenceStructure,
    seed: u64,
    count: usize,
) -> Result<Vec<Mutant>, FormatError> {
    let n = s.len();
    let pairs = n * n.saturating_sub(1) / 2;
    if count > pairs {
        return Err(FormatError::Schema(format!(
            "{count} mutants requested but only {pairs} line pairs exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, pairs, count).into_vec();
    Ok(picks
        .into_iter()
        .enumerate()
        .map(|(index, k)| {
            let flip = pair_at(n, k);
            Mutant {
                index,
                flip,
                structure: s.toggled(flip.0, flip.1),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub flip: [String; 2],
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub seed: u64,
    pub count: usize,
    pub source_digest: String,
    pub mutants: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| FormatError::Schema(e.to_string()))
    }
}

pub fn mutant_file_name(index: usize) -> String {
    format!("mutant_{index:04}.json")
}

/// Writes every mutant plus `manifest.json` into `out_dir`.
pub fn write_corpus(
    s: &IncidenceStructure,
    seed: u64,
    count: usize,
    out_dir: &Path,
) -> Result<Manifest, FormatError> {
    let mutants = generate_mutants(s, seed, count)?;
    std::fs::create_dir_all(out_dir).map_err(|e| FormatError::io(out_dir, e))?;
    let mut entries = Vec::with_capacity(mutants.len());
    for m in &mutants {
        let file = mutant_file_name(m.index);
        StructureFile::from_structure(&m.structure, None).save(&out_dir.join(&file))?;
        entries.push(ManifestEntry {
            file,
            flip: [s.label(m.flip.0).to_owned(), s.label(m.flip.1).to_owned()],
            digest: m.structure.digest(),
        });
    }
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        seed,
        count,
        source_digest: s.digest(),
        mutants: entries,
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifests serialize");
    json.push('\n');
    write_atomic(&out_dir.join("manifest.json"), json.as_bytes())?;
    Ok(manifest)
}

/// Re-applies the recorded flips to the source structure.
pub fn replay_manifest(
    s: &IncidenceStructure,
    manifest: &Manifest,
) -> Result<Vec<IncidenceStructure>, FormatError> {
    if manifest.source_digest != s.digest() {
        return Err(FormatError::Schema(
            "manifest was written for a different structure".into(),
        ));
    }
    manifest
        .mutants
        .iter()
        .map(|e| {
            let look = |label: &str| {
                s.lookup(label).ok_or_else(|| {
                    FormatError::Schema(format!("unknown label {label:?} in manifest"))
                })
            };
            Ok(s.toggled(look(&e.flip[0])?, look(&e.flip[1])?))
        })
        .collect()
}
