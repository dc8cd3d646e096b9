//! Abstract line geometry: a finite set of lines with a symmetric reflexive
//! incidence relation, and everything derived from it alone.

mod bundle;
mod lemmata;
mod sigma;

pub use bundle::{
    bundle, classify_bundles, point_plane_incident, Bundle, BundleKind, Classification,
};
pub use lemmata::{verify_unique_plane, verify_unique_point, verify_unique_transversal};
pub use sigma::{sigma_split, SigmaSplit};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lineset::LineSet;

/// Index of a line in an [`IncidenceStructure`].
pub type LineId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("line {0} is not incident to itself")]
    NotReflexive(String),
    #[error("incidence of {0} and {1} is not symmetric")]
    NotSymmetric(String, String),
    #[error("{labels} labels for {rows} rows")]
    LabelCount { labels: usize, rows: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("duplicate line label {0:?}")]
    DuplicateLabel(String),
    #[error("lines {0} and {1} are not a pair of distinct incident lines")]
    NotIncident(String, String),
    #[error("sigma({a}, {b}) is degenerate: {reason}")]
    SigmaDegenerate {
        a: String,
        b: String,
        reason: String,
        at: Vec<LineId>,
    },
    #[error("bundle [{a} {b} c] depends on the choice of c: {c1} and {c2} disagree")]
    BundleDependsOnChoice {
        a: String,
        b: String,
        c1: String,
        c2: String,
        at: Vec<LineId>,
    },
    #[error("bundle coloring inconsistent between {first} and {second}: {reason}")]
    ColoringInconsistent {
        first: String,
        second: String,
        reason: String,
        at: Vec<LineId>,
    },
    #[error("expected a {expected} bundle")]
    KindMismatch { expected: &'static str },
}

impl StructureError {
    /// Line ids behind a framework failure, for witness reporting.
    pub fn lines(&self) -> &[LineId] {
        match self {
            StructureError::SigmaDegenerate { at, .. }
            | StructureError::BundleDependsOnChoice { at, .. }
            | StructureError::ColoringInconsistent { at, .. } => at,
            _ => &[],
        }
    }
}

/// Lines plus a validated symmetric reflexive incidence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    labels: Vec<String>,
    rows: Vec<LineSet>,
}

impl IncidenceStructure {
    /// Validates reflexivity and symmetry of `rows`.
    pub fn new(labels: Vec<String>, rows: Vec<LineSet>) -> Result<Self, StructureError> {
        let n = rows.len();
        if labels.len() != n {
            return Err(StructureError::LabelCount {
                labels: labels.len(),
                rows: n,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(StructureError::DuplicateLabel(label.clone()));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.universe() != n {
                return Err(StructureError::RowLength {
                    row: i,
                    len: row.universe(),
                    expected: n,
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if !row.contains(i) {
                return Err(StructureError::NotReflexive(labels[i].clone()));
            }
            if let Some(j) = row.iter().find(|&j| !rows[j].contains(i)) {
                return Err(StructureError::NotSymmetric(
                    labels[i].clone(),
                    labels[j].clone(),
                ));
            }
        }
        Ok(IncidenceStructure { labels, rows })
    }

    /// Builds a structure from a predicate, labelling lines `L0, L1, …`.
    pub fn from_fn(
        n: usize,
        incident: impl Fn(LineId, LineId) -> bool,
    ) -> Result<Self, StructureError> {
        let rows = (0..n)
            .map(|i| LineSet::from_ids(n, (0..n).filter(|&j| incident(i, j))))
            .collect();
        Self::new(default_labels(n), rows)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, line: LineId) -> &str {
        &self.labels[line]
    }

    pub fn lookup(&self, label: &str) -> Option<LineId> {
        self.labels.iter().position(|l| l == label)
    }

    /// The lines incident to `line`, including `line` itself.
    pub fn row(&self, line: LineId) -> &LineSet {
        &self.rows[line]
    }

    pub fn rows(&self) -> &[LineSet] {
        &self.rows
    }

    pub fn lines(&self) -> std::ops::Range<LineId> {
        0..self.len()
    }

    #[inline]
    pub fn incident(&self, a: LineId, b: LineId) -> bool {
        self.rows[a].contains(b)
    }

    /// Not incident. Never true for `a == b`.
    #[inline]
    pub fn skew(&self, a: LineId, b: LineId) -> bool {
        !self.incident(a, b)
    }

    pub fn all(&self) -> LineSet {
        LineSet::full(self.len())
    }

    /// Lines incident to every member of `set`; the whole line set for `∅`.
    pub fn perp(&self, set: &LineSet) -> LineSet {
        let mut out = self.all();
        for m in set.iter() {
            out.intersect_with(&self.rows[m]);
        }
        out
    }

    /// `perp` of an explicit list of lines, written `[l₁ … lₙ]`.
    pub fn perp_of(&self, lines: &[LineId]) -> LineSet {
        let mut out = self.all();
        for &m in lines {
            out.intersect_with(&self.rows[m]);
        }
        out
    }

    /// Whether the listed lines are pairwise skew.
    pub fn pairwise_skew(&self, lines: &[LineId]) -> bool {
        lines
            .iter()
            .enumerate()
            .all(|(i, &a)| lines[i + 1..].iter().all(|&b| self.skew(a, b)))
    }

    /// First skew pair `(x, y)`, `x < y`, inside `set`.
    pub fn first_skew_pair(&self, set: &LineSet) -> Option<(LineId, LineId)> {
        set.iter().find_map(|x| {
            set.difference(&self.rows[x])
                .iter()
                .find(|&y| y > x)
                .map(|y| (x, y))
        })
    }

    /// First pairwise-skew triple inside `set` in lexicographic order.
    pub fn first_skew_triple(&self, set: &LineSet) -> Option<[LineId; 3]> {
        set.iter().find_map(|x| {
            let after_x = set.difference(&self.rows[x]);
            let found = after_x.iter().filter(|&y| y > x).find_map(|y| {
                after_x
                    .difference(&self.rows[y])
                    .iter()
                    .find(|&z| z > y)
                    .map(|z| [x, y, z])
            });
            found
        })
    }

    /// Distinct incident pairs `(a, b)` with `a < b`, in ascending order.
    pub fn incident_pairs(&self) -> Vec<(LineId, LineId)> {
        self.lines()
            .flat_map(|a| {
                self.rows[a]
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Skew pairs `(a, b)` with `a < b`, in ascending order.
    pub fn skew_pairs(&self) -> Vec<(LineId, LineId)> {
        let all = self.all();
        self.lines()
            .flat_map(|a| {
                all.difference(&self.rows[a])
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Pairwise-skew triples `(u, v, w)`, `u < v < w`, in ascending order.
    pub fn skew_triples(&self) -> Vec<[LineId; 3]> {
        let all = self.all();
        let mut out = Vec::new();
        for u in self.lines() {
            let off_u = all.difference(&self.rows[u]);
            for v in off_u.iter().filter(|&v| v > u) {
                for w in off_u.difference(&self.rows[v]).iter().filter(|&w| w > v) {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// SHA-256 over the line count and the packed relation rows, hex encoded.
    /// Labels do not contribute.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.len() as u64).to_le_bytes());
        for row in &self.rows {
            for word in row.words() {
                hasher.update(word.to_le_bytes());
            }
        }
        hex::encode(hasher.finalize())
    }

    /// Toggles the incidence of the distinct lines `a` and `b` in both rows.
    pub fn toggled(&self, a: LineId, b: LineId) -> IncidenceStructure {
        assert_ne!(a, b, "diagonal entries are fixed by reflexivity");
        let mut rows = self.rows.clone();
        rows[a].toggle(b);
        rows[b].toggle(a);
        IncidenceStructure {
            labels: self.labels.clone(),
            rows,
        }
    }

    /// Renames line `i` to `perm[i]`, carrying labels along.
    pub fn permuted(&self, perm: &[LineId]) -> IncidenceStructure {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        let mut rows = vec![LineSet::empty(n); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            for j in self.rows[i].iter() {
                rows[perm[i]].insert(perm[j]);
            }
        }
        IncidenceStructure { labels, rows }
    }

    /// Disjoint union, lines of `other` placed after those of `self`.
    pub fn disjoint_union(&self, other: &IncidenceStructure) -> IncidenceStructure {
        let (n, m) = (self.len(), other.len());
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("A.{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("B.{l}")));
        let mut rows = Vec::with_capacity(n + m);
        for r in &self.rows {
            rows.push(LineSet::from_ids(n + m, r.iter()));
        }
        for r in &other.rows {
            rows.push(LineSet::from_ids(n + m, r.iter().map(|j| j + n)));
        }
        IncidenceStructure { labels, rows }
    }

    pub fn labels_of(&self, lines: &[LineId]) -> Vec<String> {
        lines.iter().map(|&l| self.labels[l].clone()).collect()
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("L{i}")).collect()
}

/// Free-function form of [`IncidenceStructure::perp`].
pub fn perp(s: &IncidenceStructure, set: &LineSet) -> LineSet {
    s.perp(set)
}

/// Free-function form of [`IncidenceStructure::skew`].
pub fn skew(s: &IncidenceStructure, a: LineId, b: LineId) -> bool {
    s.skew(a, b)
}
