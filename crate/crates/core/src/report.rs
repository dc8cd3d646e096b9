//! Verdicts shared by every checker: audit items, witnesses, case scans and
//! sampling scopes.

use std::time::{Duration, Instant};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::incidence::LineId;

/// Note attached to a pass with no eligible cases.
pub const VACUOUS: &str = "VACUOUS";
/// Note attached to checks of statements used but not restated by the theory.
pub const INFERRED: &str = "INFERRED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

/// Line ids with a tag naming their role in the case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub role: String,
    pub lines: Vec<LineId>,
}

impl Witness {
    pub fn new(role: impl Into<String>, lines: impl Into<Vec<LineId>>) -> Witness {
        Witness {
            role: role.into(),
            lines: lines.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditItem {
    pub name: String,
    pub status: Status,
    pub cases_checked: u64,
    /// Counterexample on `Fail`, an existential sample on `Pass`.
    pub witness: Option<Witness>,
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl PartialEq for AuditItem {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.status == other.status
            && self.cases_checked == other.cases_checked
            && self.witness == other.witness
            && self.notes == other.notes
    }
}

impl AuditItem {
    pub fn from_tally(name: &str, tally: Tally, started: Instant) -> AuditItem {
        let mut notes = Vec::new();
        let (status, witness) = match tally.violation {
            Some(w) => (Status::Fail, Some(w)),
            None => {
                if tally.cases == 0 {
                    notes.push(VACUOUS.to_owned());
                }
                (Status::Pass, tally.sample)
            }
        };
        AuditItem {
            name: name.to_owned(),
            status,
            cases_checked: tally.cases,
            witness,
            elapsed: started.elapsed(),
            notes,
        }
    }

    pub fn fail(
        name: &str,
        witness: Witness,
        note: impl Into<String>,
        started: Instant,
    ) -> AuditItem {
        AuditItem {
            name: name.to_owned(),
            status: Status::Fail,
            cases_checked: 1,
            witness: Some(witness),
            elapsed: started.elapsed(),
            notes: vec![note.into()],
        }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> AuditItem {
        AuditItem {
            name: name.to_owned(),
            status: Status::Skipped,
            cases_checked: 0,
            witness: None,
            elapsed: Duration::ZERO,
            notes: vec![reason.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> AuditItem {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_vacuous(&self) -> bool {
        self.notes.iter().any(|n| n == VACUOUS)
    }
}

/// Outcome of one outer case of a checker.
#[derive(Debug, Default)]
pub struct CaseResult {
    pub checked: u64,
    pub violation: Option<Witness>,
    pub sample: Option<Witness>,
}

impl CaseResult {
    pub fn ok(checked: u64) -> CaseResult {
        CaseResult {
            checked,
            ..Default::default()
        }
    }

    pub fn violated(checked: u64, witness: Witness) -> CaseResult {
        CaseResult {
            checked,
            violation: Some(witness),
            sample: None,
        }
    }

    pub fn with_sample(mut self, sample: Witness) -> CaseResult {
        self.sample = Some(sample);
        self
    }
}

/// Merged outcome of a scan: case total, first violation and first sample in
/// case order.
#[derive(Debug, Default)]
pub struct Tally {
    pub cases: u64,
    pub violation: Option<Witness>,
    pub sample: Option<Witness>,
}

/// Runs `check` over `cases` in parallel and merges in case order, so the
/// reported witness does not depend on scheduling.
pub fn scan<C, F>(cases: &[C], check: F) -> Tally
where
    C: Sync,
    F: Fn(&C) -> CaseResult + Sync + Send,
{
    let results: Vec<CaseResult> = cases.par_iter().map(check).collect();
    let mut tally = Tally::default();
    for r in results {
        tally.cases += r.checked;
        if tally.violation.is_none() {
            tally.violation = r.violation;
        }
        if tally.sample.is_none() {
            tally.sample = r.sample;
        }
    }
    tally
}

/// Outer cases drawn per checker under [`Scope::Sample`].
pub const FAST_CASE_BUDGET: usize = 400;
/// Sampling seed used by the fast profile unless overridden.
pub const DEFAULT_FAST_SEED: u64 = 0x5EED_2E61;

/// How much of a checker's outer case space to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Full,
    Sample { seed: u64, budget: usize },
}

impl Scope {
    pub fn fast(seed: u64) -> Scope {
        Scope::Sample {
            seed,
            budget: FAST_CASE_BUDGET,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Scope::Full)
    }

    /// Keeps all cases, or a uniform sample (in original order) whose draw
    /// depends only on the seed, the checker name and the case count.
    pub fn select<C>(&self, checker: &str, cases: Vec<C>) -> Vec<C> {
        match *self {
            Scope::Full => cases,
            Scope::Sample { seed, budget } => {
                if cases.len() <= budget {
                    return cases;
                }
                let salt = checker.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
                    (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
                });
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
                let mut picked = index::sample(&mut rng, cases.len(), budget).into_vec();
                picked.sort_unstable();
                let mut keep = vec![false; cases.len()];
                for i in picked {
                    keep[i] = true;
                }
                cases
                    .into_iter()
                    .zip(keep)
                    .filter_map(|(c, k)| k.then_some(c))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_merges_in_order() {
        let cases: Vec<usize> = (0..1000).collect();
        let tally = scan(&cases, |&c| {
            if c % 97 == 96 {
                CaseResult::violated(1, Witness::new("bad", [c]))
            } else {
                CaseResult::ok(1).with_sample(Witness::new("good", [c]))
            }
        });
        assert_eq!(tally.cases, 1000);
        assert_eq!(tally.violation.unwrap().lines, vec![96]);
        assert_eq!(tally.sample.unwrap().lines, vec![0]);
    }

    #[test]
    fn vacuous_pass() {
        let item = AuditItem::from_tally("x", Tally::default(), Instant::now());
        assert!(item.passed() && item.is_vacuous());
        assert_eq!(item.cases_checked, 0);
    }

    #[test]
    fn sampling_is_deterministic_and_ordered() {
        let scope = Scope::Sample {
            seed: 7,
            budget: 10,
        };
        let a = scope.select("axiom1", (0..100).collect::<Vec<_>>());
        let b = scope.select("axiom1", (0..100).collect::<Vec<_>>());
        let c = scope.select("axiom3", (0..100).collect::<Vec<_>>());
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 10);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(scope.select("x", vec![1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(
            Scope::Full.select("x", (0..100).collect::<Vec<_>>()).len(),
            100
        );
    }
}
