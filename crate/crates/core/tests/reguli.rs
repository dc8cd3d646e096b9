mod common;

use common::{pg3, share_point, transversals};
use regulus_core::incidence::classify_bundles;
use regulus_core::reguli::{conjugate, enumerate_reguli, extend_skew_pair, regulus, RegulusError};
use regulus_core::IncidenceStructure;

fn choose3(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

#[test]
fn reguli_are_the_model_transversal_sets() {
    for q in [2u32, 3] {
        let (m, s) = pg3(q);
        let reguli = enumerate_reguli(&s);
        let n = m.lines.len();
        let mut skew_triples = 0;
        for u in 0..n {
            for v in u + 1..n {
                if share_point(&m, u, v) {
                    continue;
                }
                skew_triples += (v + 1..n)
                    .filter(|&w| !share_point(&m, u, w) && !share_point(&m, v, w))
                    .count();
            }
        }
        // every skew triple lies in exactly one conjugate, which has q+1 lines
        assert_eq!(
            reguli.len(),
            skew_triples / choose3(q as usize + 1),
            "q={q}"
        );
        for r in &reguli {
            assert_eq!(r.lines.to_vec(), transversals(&m, &r.directrices));
            assert_eq!(r.len(), q as usize + 1);
        }
    }
}

#[test]
fn regulus_counts() {
    let expected = [(2, 560), (3, 21060), (4, 274176)];
    for (q, count) in expected {
        let (_, s) = pg3(q);
        let reguli = enumerate_reguli(&s);
        assert_eq!(reguli.len(), count);
        assert_eq!(
            reguli.len(),
            s.skew_triples().len() / choose3(q as usize + 1)
        );
        assert!(reguli.iter().all(|r| r.len() == q as usize + 1), "q={q}");
    }
}

#[test]
fn every_skew_pair_extends() {
    let (m, s) = pg3(2);
    let cls = classify_bundles(&s).unwrap();
    let pairs = s.skew_pairs();
    assert_eq!(pairs.len(), 280);
    for (u, v) in pairs {
        let r = extend_skew_pair(&s, &cls, u, v).unwrap();
        assert!(r.contains(u) && r.contains(v));
        assert_eq!(r.lines.to_vec(), transversals(&m, &r.directrices));
    }
    assert!(matches!(
        extend_skew_pair(&s, &cls, 0, 1),
        Err(RegulusError::NotSkew(..))
    ));
}

#[test]
fn conjugates_match_the_model_and_invert() {
    let (m, s) = pg3(3);
    let reguli = enumerate_reguli(&s);
    for r in reguli.iter().step_by(97) {
        let c = conjugate(&s, r).unwrap();
        let members = r.lines.to_vec();
        assert_eq!(c.lines.to_vec(), transversals(&m, &members[..3]));
        // the directrices lie on the conjugate
        assert!(r.directrices.iter().all(|&d| c.contains(d)));
        assert_eq!(conjugate(&s, &c).unwrap().lines, r.lines);
    }
}

#[test]
fn distinct_reguli_share_at_most_two_lines() {
    let (_, s) = pg3(2);
    let reguli = enumerate_reguli(&s);
    for (i, a) in reguli.iter().enumerate() {
        for b in &reguli[i + 1..] {
            assert_ne!(a.lines, b.lines);
            assert!(a.lines.intersection_len(&b.lines) <= 2);
        }
    }
}

#[test]
fn regulus_preconditions() {
    let (_, s) = pg3(2);
    assert!(matches!(
        regulus(&s, 0, 1, 2),
        Err(RegulusError::NotSkew(..))
    ));
    // three mutually skew lines with no transversal
    let isolated = IncidenceStructure::from_fn(3, |i, j| i == j).unwrap();
    assert!(matches!(
        regulus(&isolated, 0, 1, 2),
        Err(RegulusError::EmptyRegulus(..))
    ));
    let r = regulus(&isolated, 0, 1, 2);
    assert!(r.is_err());
    // a single transversal leaves the conjugate undefined
    let star = IncidenceStructure::from_fn(4, |i, j| i == j || i == 3 || j == 3).unwrap();
    let r = regulus(&star, 0, 1, 2).unwrap();
    assert_eq!(r.lines.to_vec(), vec![3]);
    assert_eq!(conjugate(&star, &r), Err(RegulusError::TooFewLines(1)));
}
