//! Re-checking a reported counterexample from its witness lines alone.

use super::axioms::bundle_family;
use super::projectivity::meets_exactly_three;
use crate::incidence::{classify_bundles, IncidenceStructure, LineId};
use crate::lineset::LineSet;
use crate::report::{AuditItem, Status};

fn distinct(lines: &[LineId]) -> bool {
    lines
        .iter()
        .enumerate()
        .all(|(i, a)| !lines[i + 1..].contains(a))
}

fn sigma(s: &IncidenceStructure, a: LineId, b: LineId) -> LineSet {
    let ab = s.perp_of(&[a, b]);
    ab.difference(&s.perp(&ab))
}

fn incident_pair(s: &IncidenceStructure, a: LineId, b: LineId) -> bool {
    a != b && s.incident(a, b)
}

/// Whether the witness of a failed item still demonstrates the violation in
/// `s`. `None` when the item did not fail or its name has no replay rule.
pub fn replay_witness(s: &IncidenceStructure, item: &AuditItem) -> Option<bool> {
    if item.status != Status::Fail {
        return None;
    }
    let w = item.witness.as_ref()?;
    let l = w.lines.as_slice();
    if l.iter().any(|&x| x >= s.len()) {
        return Some(false);
    }
    let holds = match (item.name.as_str(), l) {
        ("axiom1", &[x]) => s.first_skew_triple(s.row(x)).is_none(),
        ("axiom2.1", &[a, b]) => {
            incident_pair(s, a, b) && s.first_skew_pair(&s.perp_of(&[a, b])).is_none()
        }
        ("axiom2.2", &[a, b, c, x, y]) => {
            let abc = s.perp_of(&[a, b, c]);
            incident_pair(s, a, b)
                && sigma(s, a, b).contains(c)
                && abc.contains(x)
                && abc.contains(y)
                && s.skew(x, y)
        }
        ("axiom2.3", &[a, b, x, y, m]) => {
            let ab = s.perp_of(&[a, b]);
            incident_pair(s, a, b)
                && ab.contains(x)
                && ab.contains(y)
                && s.skew(x, y)
                && ab.contains(m)
                && !s.incident(m, x)
                && !s.incident(m, y)
        }
        ("axiom3", &[a, b, c]) => {
            let abc = s.perp_of(&[a, b, c]);
            let (family, _) = bundle_family(s);
            incident_pair(s, a, b)
                && sigma(s, a, b).contains(c)
                && family.iter().all(|(y, _)| abc.intersects(y))
        }
        ("axiom4", &[a, b, c, p, q, r]) if w.role.starts_with("disjoint") => {
            incident_pair(s, a, b)
                && incident_pair(s, p, q)
                && sigma(s, a, b).contains(c)
                && sigma(s, p, q).contains(r)
                && !s.perp_of(&[a, b, c]).intersects(&s.perp_of(&[p, q, r]))
        }
        ("axiom4", _) => classify_bundles(s).is_err(),
        ("P1", &[u, v, w, a, b, c, d, t]) => {
            let r = s.perp_of(&[u, v, w]);
            s.pairwise_skew(&[u, v, w])
                && distinct(&[a, b, c, d])
                && [a, b, c, d].iter().all(|&x| r.contains(x))
                && meets_exactly_three(s, [a, b, c, d]).is_some()
                && [a, b, c].iter().all(|&x| s.incident(t, x))
                && s.skew(t, d)
        }
        ("P2", &[u, v, w, x, y, z, l, m]) => {
            let r = s.perp_of(&[u, v, w]);
            s.pairwise_skew(&[u, v, w])
                && distinct(&[x, y, z])
                && [x, y, z, l].iter().all(|&k| r.contains(k))
                && s.perp_of(&[x, y, z]).contains(m)
                && s.skew(l, m)
        }
        ("regulus_nonempty", &[u, v, w]) => {
            s.pairwise_skew(&[u, v, w]) && s.perp_of(&[u, v, w]).is_empty()
        }
        ("regulus_intersection_bound", &[u1, v1, w1, u2, v2, w2, x, y, z]) => {
            let r1 = s.perp_of(&[u1, v1, w1]);
            let r2 = s.perp_of(&[u2, v2, w2]);
            s.pairwise_skew(&[u1, v1, w1])
                && s.pairwise_skew(&[u2, v2, w2])
                && r1 != r2
                && distinct(&[x, y, z])
                && [x, y, z].iter().all(|&k| r1.contains(k) && r2.contains(k))
        }
        _ => return None,
    };
    Some(holds)
}
