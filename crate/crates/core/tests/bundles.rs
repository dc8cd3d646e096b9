mod common;

use common::{model_plane_pencils, model_point_pencils, pg3, Family};
use proptest::prelude::*;
use regulus_core::audit::{check_axiom4, check_join_in_bundle};
use regulus_core::incidence::{
    bundle, classify_bundles, point_plane_incident, sigma_split, verify_unique_plane,
    verify_unique_point, verify_unique_transversal, BundleKind, Classification,
};
use regulus_core::report::{Scope, Status};
use regulus_core::IncidenceStructure;

fn family(cls: &Classification, kind: BundleKind) -> Family {
    cls.bundles(kind).iter().map(|b| b.lines.to_vec()).collect()
}

#[test]
fn bundles_are_the_model_points_and_planes() {
    for q in [2, 3] {
        let (m, s) = pg3(q);
        let cls = classify_bundles(&s).unwrap();
        let n = (q * q * q + q * q + q + 1) as usize;
        assert_eq!((cls.points.len(), cls.planes.len()), (n, n));
        let (points, planes) = (model_point_pencils(&m), model_plane_pencils(&m));
        let (got_points, got_planes) = (
            family(&cls, BundleKind::Point),
            family(&cls, BundleKind::Plane),
        );
        assert!(
            (got_points == points && got_planes == planes)
                || (got_points == planes && got_planes == points),
            "q={q}"
        );
        let size = (q * q + q + 1) as usize;
        assert!(cls
            .points
            .iter()
            .chain(&cls.planes)
            .all(|b| b.lines.len() == size));
    }
}

#[test]
fn point_plane_sharing() {
    for q in [2u32, 3] {
        let (_, s) = pg3(q);
        let cls = classify_bundles(&s).unwrap();
        for p in &cls.points {
            for h in &cls.planes {
                let shared = p.lines.intersection_len(&h.lines);
                assert!(shared == 0 || shared == q as usize + 1);
                assert_eq!(point_plane_incident(p, h).unwrap(), shared > 0);
            }
        }
        assert!(point_plane_incident(&cls.planes[0], &cls.points[0]).is_err());
        // same-kind bundles always share exactly one line
        for (i, a) in cls.points.iter().enumerate() {
            for b in &cls.points[i + 1..] {
                assert_eq!(a.lines.intersection_len(&b.lines), 1);
            }
        }
    }
}

#[test]
fn bundle_sides_match_classification() {
    let (_, s) = pg3(2);
    let cls = classify_bundles(&s).unwrap();
    for &(a, b) in s.incident_pairs().iter().take(60) {
        let p = bundle(&s, &cls, a, b, BundleKind::Point).unwrap();
        let h = bundle(&s, &cls, a, b, BundleKind::Plane).unwrap();
        assert_eq!(p, cls.points[cls.join(BundleKind::Point, a, b).unwrap()]);
        assert_eq!(h, cls.planes[cls.join(BundleKind::Plane, a, b).unwrap()]);
        // brute force: the point is the set of lines meeting a, b and one class member
        let split = sigma_split(&s, a, b).unwrap();
        let union: Vec<_> = split
            .class_one
            .iter()
            .chain(split.class_two.iter())
            .collect();
        assert!(union.iter().all(|&c| p.contains(c) != h.contains(c)));
    }
}

#[test]
fn the_seed_bundle_is_a_point() {
    let (_, s) = pg3(2);
    let cls = classify_bundles(&s).unwrap();
    let (a, b) = s.incident_pairs()[0];
    let split = sigma_split(&s, a, b).unwrap();
    let c = split.class_one.first().unwrap();
    let seed = s.perp_of(&[a, b, c]);
    assert!(cls.points.iter().any(|p| p.lines == seed));
}

#[test]
fn uniqueness_verifiers_pass_on_models() {
    for q in [2, 3] {
        let (_, s) = pg3(q);
        let cls = classify_bundles(&s).unwrap();
        for item in [
            verify_unique_plane(&s, &cls, Scope::Full),
            verify_unique_point(&s, &cls, Scope::Full),
            verify_unique_transversal(&s, &cls, Scope::Full),
            check_join_in_bundle(&cls, BundleKind::Point, Scope::Full),
            check_join_in_bundle(&cls, BundleKind::Plane, Scope::Full),
        ] {
            assert_eq!(item.status, Status::Pass, "{} at q={q}", item.name);
            assert!(item.cases_checked > 0);
        }
    }
}

#[test]
fn uniqueness_verifiers_catch_a_missing_bundle() {
    let (_, s) = pg3(2);
    let cls = classify_bundles(&s).unwrap();
    let mut planes = cls.planes.clone();
    planes.pop();
    let doctored = Classification::from_parts(s.len(), cls.points.clone(), planes);
    let item = verify_unique_plane(&s, &doctored, Scope::Full);
    assert_eq!(item.status, Status::Fail);
    assert!(item.witness.unwrap().role.contains("0 planes"));

    let mut points = cls.points.clone();
    points.pop();
    let doctored = Classification::from_parts(s.len(), points, cls.planes.clone());
    let item = verify_unique_point(&s, &doctored, Scope::Full);
    assert_eq!(item.status, Status::Fail);
    assert!(item.witness.unwrap().role.contains("0 points"));
}

#[test]
fn classification_fails_on_two_disjoint_copies() {
    let (_, s) = pg3(2);
    let twice = s.disjoint_union(&s);
    let classified = classify_bundles(&twice);
    assert!(classified.is_err());
    let item = check_axiom4(&classified, Scope::Full);
    assert_eq!(item.status, Status::Fail);
    assert!(item.witness.is_some());
}

fn unpermute(cls: &Classification, kind: BundleKind, perm: &[usize]) -> Family {
    let mut inverse = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    cls.bundles(kind)
        .iter()
        .map(|b| {
            let mut v: Vec<_> = b.lines.iter().map(|l| inverse[l]).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_is_permutation_invariant(perm in Just((0..35usize).collect::<Vec<_>>()).prop_shuffle()) {
        let (_, s) = pg3(2);
        let base = classify_bundles(&s).unwrap();
        let moved: IncidenceStructure = s.permuted(&perm);
        let cls = classify_bundles(&moved).unwrap();
        let (p, h) = (unpermute(&cls, BundleKind::Point, &perm), unpermute(&cls, BundleKind::Plane, &perm));
        let (bp, bh) = (family(&base, BundleKind::Point), family(&base, BundleKind::Plane));
        prop_assert!((p == bp && h == bh) || (p == bh && h == bp));
    }
}
