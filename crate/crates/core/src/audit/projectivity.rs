//! The projectivity axioms.
//!
//! Both quantify over a pairwise-skew triple `u, v, w` only through the set
//! `[u v w]`, so each distinct regulus is evaluated once, reported with its
//! first generating triple.

use std::time::Instant;

use crate::incidence::{IncidenceStructure, LineId};
use crate::reguli::Regulus;
use crate::report::{scan, AuditItem, CaseResult, Scope, Status, Witness};

/// 4-subsets of `lines`, lexicographic.
fn quads(lines: &[LineId]) -> impl Iterator<Item = [LineId; 4]> + '_ {
    let n = lines.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| {
            (j + 1..n).flat_map(move |k| {
                (k + 1..n).map(move |l| [lines[i], lines[j], lines[k], lines[l]])
            })
        })
    })
}

fn triples(lines: &[LineId]) -> impl Iterator<Item = [LineId; 3]> + '_ {
    let n = lines.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [lines[i], lines[j], lines[k]]))
    })
}

/// First line meeting exactly three of `quad`, with the index of the one it
/// misses.
pub(crate) fn meets_exactly_three(
    s: &IncidenceStructure,
    quad: [LineId; 4],
) -> Option<(LineId, usize)> {
    let rows = quad.map(|l| s.row(l).words());
    let columns = rows[0].iter().zip(rows[1]).zip(rows[2]).zip(rows[3]);
    for (w, (((&a, &b), &c), &d)) in columns.enumerate() {
        let misses = [
            !a & b & c & d,
            a & !b & c & d,
            a & b & !c & d,
            a & b & c & !d,
        ];
        let any = misses.iter().fold(0, |acc, m| acc | m);
        if any != 0 {
            let bit = any.trailing_zeros() as usize;
            let missed = misses.iter().position(|m| m >> bit & 1 == 1).unwrap();
            return Some((w * 64 + bit, missed));
        }
    }
    None
}

/// P1: if a line meets three of four distinct lines of a regulus, it meets
/// the fourth.
pub fn check_p1(s: &IncidenceStructure, reguli: &[Regulus], scope: Scope) -> AuditItem {
    let name = "P1";
    let started = Instant::now();
    let cases = scope.select(name, reguli.iter().collect::<Vec<_>>());
    let n = s.len() as u64;
    let tally = scan(&cases, |r| {
        let members = r.lines.to_vec();
        let mut checked = 0;
        for quad in quads(&members) {
            checked += n;
            if let Some((t, missed)) = meets_exactly_three(s, quad) {
                let mut met: Vec<LineId> = quad
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != missed)
                    .map(|(_, &l)| l)
                    .collect();
                let [u, v, w] = r.directrices;
                let mut lines = vec![u, v, w];
                lines.append(&mut met);
                lines.extend([quad[missed], t]);
                return CaseResult::violated(
                    checked,
                    Witness::new("u, v, w, met a, b, c, missed d, line t", lines),
                );
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started).with_note(
        "a, b, c, d range over distinct lines; repeated lines make the condition trivial",
    )
}

/// P2: for distinct `x, y, z ∈ [u v w]`, every line of `[u v w]` meets every
/// line of `[x y z]`.
pub fn check_p2(s: &IncidenceStructure, reguli: &[Regulus], scope: Scope) -> AuditItem {
    let name = "P2";
    let started = Instant::now();
    let cases = scope.select(name, reguli.iter().collect::<Vec<_>>());
    let tally = scan(&cases, |r| {
        let members = r.lines.to_vec();
        let mut checked = 0;
        for t in triples(&members) {
            let xyz = s.perp_of(&t);
            checked += (members.len() * xyz.len()) as u64;
            for &l in &members {
                if let Some(m) = xyz.difference(s.row(l)).first() {
                    let [u, v, w] = r.directrices;
                    return CaseResult::violated(
                        checked,
                        Witness::new(
                            "u, v, w, x, y, z, l, skew m",
                            [u, v, w, t[0], t[1], t[2], l, m],
                        ),
                    );
                }
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started)
}

/// Runs both projectivity checkers and passes iff their verdicts agree.
pub fn check_p1_iff_p2(s: &IncidenceStructure, reguli: &[Regulus], scope: Scope) -> AuditItem {
    let p1 = check_p1(s, reguli, scope);
    let p2 = check_p2(s, reguli, scope);
    p1_iff_p2_from(&p1, &p2)
}

/// Combines existing P1 and P2 verdicts.
pub fn p1_iff_p2_from(p1: &AuditItem, p2: &AuditItem) -> AuditItem {
    let agree = p1.status == p2.status;
    let note = format!("P1 {}, P2 {}", p1.status.as_str(), p2.status.as_str());
    AuditItem {
        name: "P1_iff_P2".into(),
        status: if agree { Status::Pass } else { Status::Fail },
        cases_checked: 2,
        witness: if agree {
            None
        } else {
            p1.witness.clone().or_else(|| p2.witness.clone())
        },
        elapsed: p1.elapsed + p2.elapsed,
        notes: vec![note],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(quads(&[1, 2, 3]).count(), 0);
        assert_eq!(quads(&[1, 2, 3, 4, 5]).count(), 5);
        assert_eq!(triples(&[1, 2, 3, 4]).count(), 4);
    }

    #[test]
    fn exactly_three_detection() {
        // line 4 meets 0, 1, 2 but not 3
        let s = IncidenceStructure::from_fn(5, |i, j| i == j || (i.max(j) == 4 && i.min(j) < 3))
            .unwrap();
        assert_eq!(meets_exactly_three(&s, [0, 1, 2, 3]), Some((4, 3)));
        let full = IncidenceStructure::from_fn(5, |_, _| true).unwrap();
        assert_eq!(meets_exactly_three(&full, [0, 1, 2, 3]), None);
    }
}
