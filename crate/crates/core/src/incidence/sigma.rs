use super::{IncidenceStructure, LineId, StructureError};
use crate::lineset::LineSet;

/// `Σ(a, b) = [ab] \ [ab]^↓` for an incident pair, split into its two
/// incidence classes.
///
/// `class_one` is the class holding the lowest line id. Which class yields
/// points and which yields planes is decided globally by
/// [`classify_bundles`](super::classify_bundles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSplit {
    pub a: LineId,
    pub b: LineId,
    pub sigma: LineSet,
    pub class_one: LineSet,
    pub class_two: LineSet,
}

impl SigmaSplit {
    pub fn classes(&self) -> [&LineSet; 2] {
        [&self.class_one, &self.class_two]
    }
}

/// Lines of `set` reachable from `start` along incidences inside `set`.
fn component(s: &IncidenceStructure, set: &LineSet, start: LineId) -> LineSet {
    let mut seen = LineSet::from_ids(set.universe(), [start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in s.row(x).intersection(set).difference(&seen).iter() {
            seen.insert(y);
            stack.push(y);
        }
    }
    seen
}

/// Computes `Σ(a, b)` and partitions it by connected components of the
/// incidence graph restricted to it. Exactly two components, each a clique,
/// are required.
pub fn sigma_split(
    s: &IncidenceStructure,
    a: LineId,
    b: LineId,
) -> Result<SigmaSplit, StructureError> {
    if a == b || !s.incident(a, b) {
        return Err(StructureError::NotIncident(
            s.label(a).to_owned(),
            s.label(b).to_owned(),
        ));
    }
    let degenerate = |reason: String| StructureError::SigmaDegenerate {
        a: s.label(a).to_owned(),
        b: s.label(b).to_owned(),
        reason,
        at: vec![a, b],
    };
    let ab = s.perp_of(&[a, b]);
    let sigma = ab.difference(&s.perp(&ab));

    let mut rest = sigma.clone();
    let mut components = Vec::new();
    while let Some(start) = rest.first() {
        let comp = component(s, &rest, start);
        rest = rest.difference(&comp);
        components.push(comp);
    }
    if components.len() != 2 {
        return Err(degenerate(format!(
            "{} incidence classes instead of 2",
            components.len()
        )));
    }
    for comp in &components {
        for x in comp.iter() {
            if let Some(y) = comp.difference(s.row(x)).first() {
                return Err(degenerate(format!(
                    "{} and {} share a class but are skew",
                    s.label(x),
                    s.label(y)
                )));
            }
        }
    }
    let class_two = components.pop().unwrap();
    let class_one = components.pop().unwrap();
    Ok(SigmaSplit {
        a,
        b,
        sigma,
        class_one,
        class_two,
    })
}
