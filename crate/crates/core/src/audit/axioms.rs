//! Checkers for axioms 1 to 4 and the framework facts they rest on.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::incidence::{
    sigma_split, BundleKind, Classification, IncidenceStructure, LineId, StructureError,
};
use crate::lineset::LineSet;
use crate::report::{scan, AuditItem, CaseResult, Scope, Witness, INFERRED};

/// Axiom 1: every `l^↓` holds three pairwise-skew lines.
pub fn check_axiom1(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "axiom1";
    let started = Instant::now();
    let cases = scope.select(name, s.lines().collect());
    let tally = scan(&cases, |&l| match s.first_skew_triple(s.row(l)) {
        Some([x, y, z]) => {
            CaseResult::ok(1).with_sample(Witness::new("line, skew triple", [l, x, y, z]))
        }
        None => CaseResult::violated(1, Witness::new("line without a skew triple", [l])),
    });
    AuditItem::from_tally(name, tally, started)
}

/// Axiom 2.1: `[ab]` holds a skew pair for every incident pair.
pub fn check_axiom2_1(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "axiom2.1";
    let started = Instant::now();
    let cases = scope.select(name, s.incident_pairs());
    let tally = scan(&cases, |&(a, b)| {
        match s.first_skew_pair(&s.perp_of(&[a, b])) {
            Some((x, y)) => {
                CaseResult::ok(1).with_sample(Witness::new("a, b, skew pair", [a, b, x, y]))
            }
            None => CaseResult::violated(1, Witness::new("a, b with no skew pair in [ab]", [a, b])),
        }
    });
    AuditItem::from_tally(name, tally, started)
}

/// Axiom 2.2: for `c ∈ Σ(a, b)`, `[abc]` holds no skew pair.
pub fn check_axiom2_2(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "axiom2.2";
    let started = Instant::now();
    let cases = scope.select(name, s.incident_pairs());
    let tally = scan(&cases, |&(a, b)| {
        let ab = s.perp_of(&[a, b]);
        let sigma = ab.difference(&s.perp(&ab));
        let mut checked = 0;
        for c in sigma.iter() {
            checked += 1;
            if let Some((x, y)) = s.first_skew_pair(&ab.intersection(s.row(c))) {
                return CaseResult::violated(
                    checked,
                    Witness::new("a, b, c, skew pair in [abc]", [a, b, c, x, y]),
                );
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started)
}

/// Axiom 2.3: `[ab] = [abx] ∪ [aby]` for every skew pair `x, y` in `[ab]`.
pub fn check_axiom2_3(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "axiom2.3";
    let started = Instant::now();
    let cases = scope.select(name, s.incident_pairs());
    let tally = scan(&cases, |&(a, b)| {
        let ab = s.perp_of(&[a, b]);
        let mut checked = 0;
        for x in ab.iter() {
            let abx = ab.intersection(s.row(x));
            for y in ab.difference(s.row(x)).iter().filter(|&y| y > x) {
                checked += 1;
                let covered = abx.union(&ab.intersection(s.row(y)));
                if let Some(m) = ab.difference(&covered).first() {
                    return CaseResult::violated(
                        checked,
                        Witness::new("a, b, skew pair, uncovered line", [a, b, x, y, m]),
                    );
                }
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started)
}

pub fn check_axiom2(s: &IncidenceStructure, scope: Scope) -> [AuditItem; 3] {
    [
        check_axiom2_1(s, scope),
        check_axiom2_2(s, scope),
        check_axiom2_3(s, scope),
    ]
}

pub type BundleFamily = (Vec<(LineSet, [LineId; 3])>, HashMap<LineSet, usize>);

/// Every distinct set `[pqr]` with `p ≠ q` incident and `r ∈ Σ(p, q)`, with
/// the first triple producing it, and an index from set to position.
pub fn bundle_family(s: &IncidenceStructure) -> BundleFamily {
    let per_pair: Vec<Vec<(LineSet, [LineId; 3])>> = s
        .incident_pairs()
        .into_par_iter()
        .map(|(p, q)| {
            let pq = s.perp_of(&[p, q]);
            let sigma = pq.difference(&s.perp(&pq));
            sigma
                .iter()
                .map(|r| (pq.intersection(s.row(r)), [p, q, r]))
                .collect()
        })
        .collect();
    let mut index = HashMap::new();
    let mut family = Vec::new();
    for (set, gens) in per_pair.into_iter().flatten() {
        if !index.contains_key(&set) {
            index.insert(set.clone(), family.len());
            family.push((set, gens));
        }
    }
    (family, index)
}

/// Axiom 3: for every incident pair `a, b` and `c ∈ Σ(a, b)` some bundle
/// `[pqr]` is disjoint from `[abc]`. Candidates range over the bundle family.
pub fn check_axiom3(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "axiom3";
    let started = Instant::now();
    let (family, index) = bundle_family(s);
    // first disjoint partner of each family member
    let partner: Vec<Option<usize>> = family
        .par_iter()
        .map(|(x, _)| family.iter().position(|(y, _)| !x.intersects(y)))
        .collect();
    let cases = scope.select(name, s.incident_pairs());
    let tally = scan(&cases, |&(a, b)| {
        let ab = s.perp_of(&[a, b]);
        let sigma = ab.difference(&s.perp(&ab));
        let mut checked = 0;
        let mut sample = None;
        for c in sigma.iter() {
            checked += 1;
            let abc = ab.intersection(s.row(c));
            match partner[index[&abc]] {
                Some(j) => {
                    let [p, q, r] = family[j].1;
                    sample.get_or_insert_with(|| {
                        Witness::new("a, b, c, disjoint p, q, r", [a, b, c, p, q, r])
                    });
                }
                None => {
                    return CaseResult::violated(
                        checked,
                        Witness::new("a, b, c with no disjoint bundle", [a, b, c]),
                    )
                }
            }
        }
        let r = CaseResult::ok(checked);
        match sample {
            Some(w) => r.with_sample(w),
            None => r,
        }
    });
    AuditItem::from_tally(name, tally, started)
        .with_note(format!("{} candidate bundles", family.len()))
}

/// Every `Σ(a, b)` splits into two incidence cliques and `[abc]` does not
/// depend on `c` within a class.
pub fn check_sigma_structure(s: &IncidenceStructure, scope: Scope) -> AuditItem {
    let name = "sigma_two_classes";
    let started = Instant::now();
    let cases = scope.select(name, s.incident_pairs());
    let tally = scan(&cases, |&(a, b)| {
        let split = match sigma_split(s, a, b) {
            Ok(split) => split,
            Err(e) => return CaseResult::violated(1, framework_witness(&e, a, b)),
        };
        let ab = s.perp_of(&[a, b]);
        let mut reps = Vec::new();
        for class in split.classes() {
            let c0 = class.first().unwrap();
            let first = ab.intersection(s.row(c0));
            if let Some(c) = class.iter().find(|&c| ab.intersection(s.row(c)) != first) {
                return CaseResult::violated(
                    1,
                    Witness::new("a, b, c, c' with different bundles", [a, b, c0, c]),
                );
            }
            reps.push(c0);
        }
        CaseResult::ok(1).with_sample(Witness::new(
            "a, b, one line of each class",
            [a, b, reps[0], reps[1]],
        ))
    });
    AuditItem::from_tally(name, tally, started)
}

fn framework_witness(e: &StructureError, a: LineId, b: LineId) -> Witness {
    let lines = if e.lines().is_empty() {
        vec![a, b]
    } else {
        e.lines().to_vec()
    };
    Witness::new(e.to_string(), lines)
}

/// Axiom 4: any two points share a line, and any two planes share a line.
pub fn check_axiom4(
    classified: &Result<Classification, StructureError>,
    scope: Scope,
) -> AuditItem {
    let name = "axiom4";
    let started = Instant::now();
    let cls = match classified {
        Ok(cls) => cls,
        Err(e) => {
            return AuditItem::fail(
                name,
                Witness::new(e.to_string(), e.lines().to_vec()),
                "points and planes are undefined: bundle classification failed",
                started,
            )
        }
    };
    let mut cases = Vec::new();
    for kind in [BundleKind::Point, BundleKind::Plane] {
        let n = cls.bundles(kind).len();
        cases.extend((0..n).map(|i| (kind, i)));
    }
    let cases = scope.select(name, cases);
    let tally = scan(&cases, |&(kind, i)| {
        let bundles = cls.bundles(kind);
        let x = &bundles[i];
        let mut checked = 0;
        for y in &bundles[i + 1..] {
            checked += 1;
            if !x.lines.intersects(&y.lines) {
                let (a, b, c) = x.generators;
                let (p, q, r) = y.generators;
                return CaseResult::violated(
                    checked,
                    Witness::new(
                        format!("disjoint {0}s (a b c), (p q r)", kind.name()),
                        [a, b, c, p, q, r],
                    ),
                );
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started)
}

/// Two distinct points lie on one line, and every plane through both points
/// contains it. Run with `BundleKind::Plane` for the dual statement.
pub fn check_join_in_bundle(cls: &Classification, kind: BundleKind, scope: Scope) -> AuditItem {
    let name = match kind {
        BundleKind::Point => "join_in_plane",
        BundleKind::Plane => "meet_through_point",
    };
    let started = Instant::now();
    let outers = cls.bundles(kind);
    let duals = cls.bundles(kind.dual());
    let cases = scope.select(name, (0..outers.len()).collect());
    let tally = scan(&cases, |&i| {
        let x = &outers[i];
        let mut checked = 0;
        for y in &outers[i + 1..] {
            checked += 1;
            let common = x.lines.intersection(&y.lines);
            let (a, b, c) = x.generators;
            let (p, q, r) = y.generators;
            if common.len() != 1 {
                return CaseResult::violated(
                    checked,
                    Witness::new(
                        format!(
                            "{0}s (a b c), (p q r) sharing {1} lines",
                            kind.name(),
                            common.len()
                        ),
                        [a, b, c, p, q, r],
                    ),
                );
            }
            let line = common.first().unwrap();
            if let Some(d) = duals.iter().find(|d| {
                d.lines.intersects(&x.lines) && d.lines.intersects(&y.lines) && !d.contains(line)
            }) {
                let (u, v, w) = d.generators;
                return CaseResult::violated(
                    checked,
                    Witness::new(
                        "bundles (a b c), (p q r), joining line, dual bundle (u v w)",
                        [a, b, c, p, q, r, line, u, v, w],
                    ),
                );
            }
        }
        CaseResult::ok(checked)
    });
    AuditItem::from_tally(name, tally, started).with_note(INFERRED)
}
