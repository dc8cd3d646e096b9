//! Uniqueness statements about points, planes and lines, checked case by case.

use std::time::Instant;

use super::{BundleKind, Classification, IncidenceStructure};
use crate::report::{scan, AuditItem, CaseResult, Scope, Witness};

/// For every bundle `B` of `outer` kind and line `l ∉ B`, exactly one bundle of
/// the dual kind contains `l` and meets `B`.
fn unique_dual_through(
    name: &str,
    s: &IncidenceStructure,
    cls: &Classification,
    outer: BundleKind,
    scope: Scope,
) -> AuditItem {
    let started = Instant::now();
    let inner = outer.dual();
    let outers = cls.bundles(outer);
    let inners = cls.bundles(inner);
    let cases: Vec<(usize, usize)> = outers
        .iter()
        .enumerate()
        .flat_map(|(i, b)| s.lines().filter(|&l| !b.contains(l)).map(move |l| (i, l)))
        .collect();
    let cases = scope.select(name, cases);
    let tally = scan(&cases, |&(i, l)| {
        let b = &outers[i];
        let found: Vec<usize> = cls
            .containing(inner, l)
            .iter()
            .copied()
            .filter(|&j| inners[j].lines.intersects(&b.lines))
            .collect();
        let (a, bb, c) = b.generators;
        if found.len() == 1 {
            let (x, y, z) = inners[found[0]].generators;
            CaseResult::ok(1).with_sample(Witness::new(
                format!("{0}(a b c), line, {1}(a b c)", outer.name(), inner.name()),
                [a, bb, c, l, x, y, z],
            ))
        } else {
            CaseResult::violated(
                1,
                Witness::new(
                    format!(
                        "{}(a b c), line: {} {}s",
                        outer.name(),
                        found.len(),
                        inner.name()
                    ),
                    [a, bb, c, l],
                ),
            )
        }
    });
    AuditItem::from_tally(name, tally, started)
}

/// A line off a point lies in exactly one plane through that point.
pub fn verify_unique_plane(
    s: &IncidenceStructure,
    cls: &Classification,
    scope: Scope,
) -> AuditItem {
    unique_dual_through("unique_plane", s, cls, BundleKind::Point, scope)
}

/// A line not in a plane passes through exactly one point of that plane.
pub fn verify_unique_point(
    s: &IncidenceStructure,
    cls: &Classification,
    scope: Scope,
) -> AuditItem {
    unique_dual_through("unique_point", s, cls, BundleKind::Plane, scope)
        .with_note("DUAL-OF unique_plane")
}

/// Through a point on neither of two skew lines runs exactly one line
/// meeting both.
pub fn verify_unique_transversal(
    s: &IncidenceStructure,
    cls: &Classification,
    scope: Scope,
) -> AuditItem {
    let name = "unique_transversal";
    let started = Instant::now();
    let cases = scope.select(name, s.skew_pairs());
    let tally = scan(&cases, |&(u, v)| {
        let uv = s.perp_of(&[u, v]);
        let mut checked = 0;
        let mut sample = None;
        for p in cls
            .points
            .iter()
            .filter(|p| !p.contains(u) && !p.contains(v))
        {
            checked += 1;
            let through = p.lines.intersection(&uv);
            let (a, b, c) = p.generators;
            if through.len() != 1 {
                return CaseResult::violated(
                    checked,
                    Witness::new(
                        format!("u, v, point(a b c): {} transversals", through.len()),
                        [u, v, a, b, c],
                    ),
                );
            }
            sample.get_or_insert_with(|| {
                Witness::new(
                    "u, v, point(a b c), transversal",
                    [u, v, a, b, c, through.first().unwrap()],
                )
            });
        }
        let r = CaseResult::ok(checked);
        match sample {
            Some(w) => r.with_sample(w),
            None => r,
        }
    });
    AuditItem::from_tally(name, tally, started)
}
