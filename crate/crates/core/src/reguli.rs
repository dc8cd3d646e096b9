//! Reguli `[u v w]`, their conjugates, and the statements about them that
//! follow from the projectivity axiom.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::incidence::{BundleKind, Classification, IncidenceStructure, LineId};
use crate::lineset::LineSet;
use crate::report::{scan, AuditItem, CaseResult, Scope, Witness, INFERRED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegulusError {
    #[error("{0} and {1} are not skew")]
    NotSkew(String, String),
    #[error("regulus [{0} {1} {2}] is empty")]
    EmptyRegulus(String, String, String),
    #[error("regulus has {0} lines, at least 3 are needed")]
    TooFewLines(usize),
    #[error("skew-pair construction failed: {0}")]
    ConstructionFailed(String),
    #[error("conjugate depends on the triple: [{first}] differs from [{second}]")]
    ConjugateIllDefined { first: String, second: String },
}

/// The common transversals of three pairwise-skew directrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulus {
    pub lines: LineSet,
    pub directrices: [LineId; 3],
}

impl Regulus {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn contains(&self, line: LineId) -> bool {
        self.lines.contains(line)
    }
}

fn first_incident_pair(s: &IncidenceStructure, lines: &[LineId]) -> Option<(LineId, LineId)> {
    lines.iter().enumerate().find_map(|(i, &a)| {
        lines[i + 1..]
            .iter()
            .find(|&&b| s.incident(a, b))
            .map(|&b| (a, b))
    })
}

/// `[u v w]` for pairwise-skew `u, v, w`; members must be pairwise skew too.
pub fn regulus(
    s: &IncidenceStructure,
    u: LineId,
    v: LineId,
    w: LineId,
) -> Result<Regulus, RegulusError> {
    let not_skew =
        |(a, b): (LineId, LineId)| RegulusError::NotSkew(s.label(a).into(), s.label(b).into());
    if let Some(pair) = first_incident_pair(s, &[u, v, w]) {
        return Err(not_skew(pair));
    }
    let lines = s.perp_of(&[u, v, w]);
    if lines.is_empty() {
        return Err(RegulusError::EmptyRegulus(
            s.label(u).into(),
            s.label(v).into(),
            s.label(w).into(),
        ));
    }
    if let Some(pair) = first_incident_pair(s, &lines.to_vec()) {
        return Err(not_skew(pair));
    }
    Ok(Regulus {
        lines,
        directrices: [u, v, w],
    })
}

/// Finds a regulus through the skew lines `u` and `v`: take the first
/// pairwise-skew triples `uᵢ` meeting `u` and `vᵢ` meeting `v`, let `lᵢ` be
/// the single line common to the points `u ∨ uᵢ` and `v ∨ vᵢ`, and return
/// `[l₁ l₂ l₃]`.
pub fn extend_skew_pair(
    s: &IncidenceStructure,
    cls: &Classification,
    u: LineId,
    v: LineId,
) -> Result<Regulus, RegulusError> {
    if !s.skew(u, v) {
        return Err(RegulusError::NotSkew(s.label(u).into(), s.label(v).into()));
    }
    let failed = |msg: String| RegulusError::ConstructionFailed(msg);
    let triple_on = |x: LineId| {
        s.first_skew_triple(s.row(x))
            .ok_or_else(|| failed(format!("no pairwise-skew triple meets {}", s.label(x))))
    };
    let (us, vs) = (triple_on(u)?, triple_on(v)?);
    let mut ls = [0; 3];
    for i in 0..3 {
        let join = |x: LineId, y: LineId| {
            cls.join(BundleKind::Point, x, y)
                .ok_or_else(|| failed(format!("no point holds {} and {}", s.label(x), s.label(y))))
        };
        let p = &cls.points[join(u, us[i])?].lines;
        let q = &cls.points[join(v, vs[i])?].lines;
        let common = p.intersection(q);
        if common.len() != 1 {
            return Err(failed(format!(
                "points {}∨{} and {}∨{} share {} lines",
                s.label(u),
                s.label(us[i]),
                s.label(v),
                s.label(vs[i]),
                common.len()
            )));
        }
        ls[i] = common.first().unwrap();
    }
    let r = regulus(s, ls[0], ls[1], ls[2]).map_err(|e| failed(format!("[l1 l2 l3]: {e}")))?;
    if !r.contains(u) || !r.contains(v) {
        return Err(failed("result misses u or v".into()));
    }
    Ok(r)
}

/// All 3-subsets of `lines` in lexicographic order.
fn triples(lines: &[LineId]) -> impl Iterator<Item = [LineId; 3]> + '_ {
    let n = lines.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [lines[i], lines[j], lines[k]]))
    })
}

/// The regulus generated by the three lowest lines of `r`, after checking that
/// every triple of `r` generates the same set.
pub fn conjugate(s: &IncidenceStructure, r: &Regulus) -> Result<Regulus, RegulusError> {
    conjugate_in(s, r, Scope::Full)
}

/// [`conjugate`] with the triple-independence check limited to `scope`.
pub fn conjugate_in(
    s: &IncidenceStructure,
    r: &Regulus,
    scope: Scope,
) -> Result<Regulus, RegulusError> {
    let members = r.lines.to_vec();
    if members.len() < 3 {
        return Err(RegulusError::TooFewLines(members.len()));
    }
    let base = [members[0], members[1], members[2]];
    let canonical = regulus(s, base[0], base[1], base[2])?;
    let others = scope.select("conjugate", triples(&members).skip(1).collect());
    if let Some(t) = others.into_iter().find(|t| s.perp_of(t) != canonical.lines) {
        return Err(RegulusError::ConjugateIllDefined {
            first: s.labels_of(&base).join(" "),
            second: s.labels_of(&t).join(" "),
        });
    }
    Ok(canonical)
}

/// Every distinct set `[u v w]` over pairwise-skew triples, including the
/// empty set if it occurs, each with its lexicographically first triple, in
/// the order of that triple.
pub fn enumerate_reguli(s: &IncidenceStructure) -> Vec<Regulus> {
    let all = s.all();
    let per_leader: Vec<Vec<Regulus>> = s
        .lines()
        .into_par_iter()
        .map(|u| {
            let off_u = all.difference(s.row(u));
            let mut seen = HashMap::new();
            let mut found = Vec::new();
            for v in off_u.iter().filter(|&v| v > u) {
                let uv = s.row(u).intersection(s.row(v));
                for w in off_u.difference(s.row(v)).iter().filter(|&w| w > v) {
                    let lines = uv.intersection(s.row(w));
                    if !seen.contains_key(&lines) {
                        seen.insert(lines.clone(), ());
                        found.push(Regulus {
                            lines,
                            directrices: [u, v, w],
                        });
                    }
                }
            }
            found
        })
        .collect();
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for r in per_leader.into_iter().flatten() {
        if !seen.contains_key(&r.lines) {
            seen.insert(r.lines.clone(), ());
            out.push(r);
        }
    }
    out
}

fn directrix_witness(role: &str, r: &Regulus) -> Witness {
    Witness::new(role, r.directrices)
}

/// Every regulus is nonempty.
pub fn check_regulus_nonempty(reguli: &[Regulus]) -> AuditItem {
    let started = Instant::now();
    let tally = scan(reguli, |r| {
        if r.is_empty() {
            CaseResult::violated(1, directrix_witness("directrices of an empty regulus", r))
        } else {
            CaseResult::ok(1).with_sample(Witness::new(
                "directrices, first transversal",
                [
                    r.directrices[0],
                    r.directrices[1],
                    r.directrices[2],
                    r.lines.first().unwrap(),
                ],
            ))
        }
    });
    AuditItem::from_tally("regulus_nonempty", tally, started)
}

/// Every regulus has at least three lines, and they are pairwise skew.
pub fn check_regulus_shape(s: &IncidenceStructure, reguli: &[Regulus]) -> AuditItem {
    let started = Instant::now();
    let tally = scan(reguli, |r| {
        let members = r.lines.to_vec();
        if members.len() < 3 {
            return CaseResult::violated(
                1,
                directrix_witness(
                    &format!("directrices of a regulus with {} lines", members.len()),
                    r,
                ),
            );
        }
        match first_incident_pair(s, &members) {
            Some((a, b)) => {
                let [u, v, w] = r.directrices;
                CaseResult::violated(
                    1,
                    Witness::new("directrices, incident members", [u, v, w, a, b]),
                )
            }
            None => CaseResult::ok(1),
        }
    });
    AuditItem::from_tally("regulus_shape", tally, started).with_note(INFERRED)
}

/// Every skew pair lies in a regulus built by [`extend_skew_pair`], and that
/// regulus has a third line.
pub fn check_skew_pair_extends(
    s: &IncidenceStructure,
    cls: &Classification,
    scope: Scope,
) -> AuditItem {
    let name = "skew_pair_extends";
    let started = Instant::now();
    let cases = scope.select(name, s.skew_pairs());
    let tally = scan(&cases, |&(u, v)| match extend_skew_pair(s, cls, u, v) {
        Ok(r) if r.lines.iter().any(|l| l != u && l != v) => {
            let [a, b, c] = r.directrices;
            CaseResult::ok(1).with_sample(Witness::new("u, v, l1, l2, l3", [u, v, a, b, c]))
        }
        Ok(r) => CaseResult::violated(1, directrix_witness("regulus holding only u and v", &r)),
        Err(e) => CaseResult::violated(1, Witness::new(format!("u, v: {e}"), [u, v])),
    });
    AuditItem::from_tally(name, tally, started)
}

/// Every triple of a regulus generates the same conjugate.
pub fn check_conjugate_well_defined(
    s: &IncidenceStructure,
    reguli: &[Regulus],
    scope: Scope,
) -> AuditItem {
    let name = "conjugate_well_defined";
    let started = Instant::now();
    let cases: Vec<&Regulus> = reguli.iter().filter(|r| r.len() >= 3).collect();
    let cases = scope.select(name, cases);
    let tally = scan(&cases, |r| {
        let members = r.lines.to_vec();
        let base = s.perp_of(&members[..3]);
        let mut checked = 0;
        for t in triples(&members) {
            checked += 1;
            if s.perp_of(&t) != base {
                let mut lines = members[..3].to_vec();
                lines.extend(t);
                return CaseResult::violated(
                    checked,
                    Witness::new("first triple, disagreeing triple", lines),
                );
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started)
}

/// The conjugate of the conjugate is the regulus itself.
pub fn check_conjugate_involution(
    s: &IncidenceStructure,
    reguli: &[Regulus],
    scope: Scope,
) -> AuditItem {
    let name = "conjugate_involution";
    let started = Instant::now();
    let cases: Vec<&Regulus> = reguli.iter().filter(|r| r.len() >= 3).collect();
    let cases = scope.select(name, cases);
    let tally = scan(&cases, |r| {
        let back = conjugate(s, r).and_then(|c| conjugate(s, &c));
        match back {
            Ok(b) if b.lines == r.lines => CaseResult::ok(1),
            Ok(_) => CaseResult::violated(
                1,
                directrix_witness("directrices; double conjugate differs", r),
            ),
            Err(e) => CaseResult::violated(1, directrix_witness(&format!("directrices: {e}"), r)),
        }
    });
    AuditItem::from_tally(name, tally, started)
}

/// Two distinct reguli share at most two lines. Checked by indexing every
/// 3-subset of every regulus: a triple owned by two reguli is a violation.
pub fn check_two_line_intersection(reguli: &[Regulus]) -> AuditItem {
    let name = "regulus_intersection_bound";
    let started = Instant::now();
    let n = reguli.len() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    let mut owner: HashMap<[LineId; 3], usize> = HashMap::new();
    let mut violation = None;
    'outer: for (i, r) in reguli.iter().enumerate() {
        let members = r.lines.to_vec();
        for t in triples(&members) {
            if let Some(&j) = owner.get(&t) {
                let mut lines = reguli[j].directrices.to_vec();
                lines.extend(r.directrices);
                lines.extend(t);
                violation = Some(Witness::new(
                    "directrices of both reguli, shared triple",
                    lines,
                ));
                break 'outer;
            }
            owner.insert(t, i);
        }
    }
    let tally = crate::report::Tally {
        cases: pairs,
        violation,
        sample: None,
    };
    AuditItem::from_tally(name, tally, started)
        .with_note("pairs checked through a shared-triple index")
}

fn coverage(
    name: &str,
    s: &IncidenceStructure,
    cls: &Classification,
    reguli: &[Regulus],
    kind: BundleKind,
    scope: Scope,
) -> AuditItem {
    let started = Instant::now();
    let cases: Vec<&Regulus> = reguli.iter().filter(|r| r.len() >= 3).collect();
    let cases = scope.select(name, cases);
    let bundles = cls.bundles(kind);
    let excluded = std::sync::atomic::AtomicUsize::new(0);
    let tally = scan(&cases, |r| {
        let Ok(conj) = conjugate(s, r) else {
            excluded.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            return CaseResult::ok(0);
        };
        let mut checked = 0;
        for b in bundles.iter().filter(|b| b.lines.intersects(&r.lines)) {
            checked += 1;
            if !b.lines.intersects(&conj.lines) {
                let [u, v, w] = r.directrices;
                let (a, bb, c) = b.generators;
                return CaseResult::violated(
                    checked,
                    Witness::new(
                        format!("directrices, {}(a b c)", kind.name()),
                        [u, v, w, a, bb, c],
                    ),
                );
            }
        }
        CaseResult::ok(checked)
    });
    let mut item = AuditItem::from_tally(name, tally, started);
    let excluded = excluded.into_inner();
    if excluded > 0 {
        item = item.with_note(format!("{excluded} reguli excluded: conjugate ill-defined"));
    }
    item
}

/// A point on a line of a regulus lies on a line of its conjugate.
pub fn check_point_coverage(
    s: &IncidenceStructure,
    cls: &Classification,
    reguli: &[Regulus],
    scope: Scope,
) -> AuditItem {
    coverage("point_coverage", s, cls, reguli, BundleKind::Point, scope)
}

/// A plane containing a line of a regulus contains a line of its conjugate.
pub fn check_plane_coverage(
    s: &IncidenceStructure,
    cls: &Classification,
    reguli: &[Regulus],
    scope: Scope,
) -> AuditItem {
    coverage("plane_coverage", s, cls, reguli, BundleKind::Plane, scope)
        .with_note("DUAL-OF point_coverage")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_enumerate_subsets() {
        let t: Vec<_> = triples(&[1, 4, 6, 9]).collect();
        assert_eq!(t, vec![[1, 4, 6], [1, 4, 9], [1, 6, 9], [4, 6, 9]]);
        assert_eq!(triples(&[1, 2]).count(), 0);
    }

    #[test]
    fn regulus_preconditions() {
        // three mutually skew lines with no common transversal
        let s =
            IncidenceStructure::from_fn(4, |i, j| i == j || (i == 3) != (j == 3) && i.min(j) == 0)
                .unwrap();
        assert!(matches!(
            regulus(&s, 0, 0, 1),
            Err(RegulusError::NotSkew(..))
        ));
        assert!(matches!(
            regulus(&s, 0, 3, 1),
            Err(RegulusError::NotSkew(..))
        ));
        assert!(matches!(
            regulus(&s, 0, 1, 2),
            Err(RegulusError::EmptyRegulus(..))
        ));
    }

    #[test]
    fn too_few_lines_for_a_conjugate() {
        let s = IncidenceStructure::from_fn(4, |i, j| i == j || i == 3 || j == 3).unwrap();
        let r = regulus(&s, 0, 1, 2).unwrap();
        assert_eq!(r.lines.to_vec(), vec![3]);
        assert_eq!(conjugate(&s, &r), Err(RegulusError::TooFewLines(1)));
    }
}
