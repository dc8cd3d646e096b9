use std::collections::HashMap;

use rayon::prelude::*;

use super::{sigma_split, IncidenceStructure, LineId, SigmaSplit, StructureError};
use crate::lineset::LineSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BundleKind {
    Point,
    Plane,
}

impl BundleKind {
    pub fn dual(self) -> BundleKind {
        match self {
            BundleKind::Point => BundleKind::Plane,
            BundleKind::Plane => BundleKind::Point,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BundleKind::Point => "point",
            BundleKind::Plane => "plane",
        }
    }
}

/// A derived point or plane, held as its set of lines `[a b c]`.
///
/// Equality ignores the generating triple.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub kind: BundleKind,
    pub lines: LineSet,
    pub generators: (LineId, LineId, LineId),
}

impl PartialEq for Bundle {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.lines == other.lines
    }
}

impl Eq for Bundle {}

impl Bundle {
    pub fn contains(&self, line: LineId) -> bool {
        self.lines.contains(line)
    }
}

/// `[a b c]` for every `c` in `class`, required to be one set.
fn class_bundle(
    s: &IncidenceStructure,
    a: LineId,
    b: LineId,
    class: &LineSet,
) -> Result<(LineSet, LineId), StructureError> {
    let ab = s.perp_of(&[a, b]);
    let mut members = class.iter();
    let c0 = members.next().expect("sigma classes are nonempty");
    let lines = ab.intersection(s.row(c0));
    for c in members {
        if ab.intersection(s.row(c)) != lines {
            return Err(StructureError::BundleDependsOnChoice {
                a: s.label(a).to_owned(),
                b: s.label(b).to_owned(),
                c1: s.label(c0).to_owned(),
                c2: s.label(c).to_owned(),
                at: vec![a, b, c0, c],
            });
        }
    }
    Ok((lines, c0))
}

/// All points and planes of a structure, with the global orientation fixed.
#[derive(Debug, Clone)]
pub struct Classification {
    pub points: Vec<Bundle>,
    pub planes: Vec<Bundle>,
    pair_bundles: HashMap<(LineId, LineId), (usize, usize)>,
    points_on: Vec<Vec<usize>>,
    planes_on: Vec<Vec<usize>>,
}

impl Classification {
    /// Assembles a classification from explicit bundle lists. Pair lookups
    /// resolve `(a, b)` to the unique bundle of each kind holding both lines.
    pub fn from_parts(n: usize, points: Vec<Bundle>, planes: Vec<Bundle>) -> Classification {
        let index = |bundles: &[Bundle]| {
            let mut on = vec![Vec::new(); n];
            for (i, b) in bundles.iter().enumerate() {
                for l in b.lines.iter() {
                    on[l].push(i);
                }
            }
            on
        };
        let points_on = index(&points);
        let planes_on = index(&planes);
        Classification {
            points,
            planes,
            pair_bundles: HashMap::new(),
            points_on,
            planes_on,
        }
    }

    pub fn bundles(&self, kind: BundleKind) -> &[Bundle] {
        match kind {
            BundleKind::Point => &self.points,
            BundleKind::Plane => &self.planes,
        }
    }

    /// Indices of the bundles of `kind` containing `line`.
    pub fn containing(&self, kind: BundleKind, line: LineId) -> &[usize] {
        match kind {
            BundleKind::Point => &self.points_on[line],
            BundleKind::Plane => &self.planes_on[line],
        }
    }

    /// Index of `a ∨ b` (point) or `a ⊓ b` (plane) for distinct incident lines.
    pub fn join(&self, kind: BundleKind, a: LineId, b: LineId) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        if let Some(&(p, pl)) = self.pair_bundles.get(&key) {
            return Some(if kind == BundleKind::Point { p } else { pl });
        }
        let bundles = self.bundles(kind);
        self.containing(kind, a)
            .iter()
            .copied()
            .find(|&i| bundles[i].contains(b))
    }

    /// Swaps the roles of points and planes.
    pub fn dual(&self) -> Classification {
        let flip = |bs: &[Bundle]| {
            bs.iter()
                .map(|b| Bundle {
                    kind: b.kind.dual(),
                    ..b.clone()
                })
                .collect::<Vec<_>>()
        };
        Classification {
            points: flip(&self.planes),
            planes: flip(&self.points),
            pair_bundles: self
                .pair_bundles
                .iter()
                .map(|(&k, &(p, pl))| (k, (pl, p)))
                .collect(),
            points_on: self.planes_on.clone(),
            planes_on: self.points_on.clone(),
        }
    }

    /// Which class of `split` yields the point and which the plane.
    pub fn sides<'a>(&self, split: &'a SigmaSplit) -> Option<(&'a LineSet, &'a LineSet)> {
        let c = split.class_one.first()?;
        let point = self.join(BundleKind::Point, split.a, split.b)?;
        if self.points[point].contains(c) {
            Some((&split.class_one, &split.class_two))
        } else {
            Some((&split.class_two, &split.class_one))
        }
    }
}

/// Enumerates every bundle `[a b c]` over all incident pairs and colors
/// them: distinct bundles sharing exactly one line get the same kind, those
/// sharing none or several get opposite kinds. The bundle of the first
/// incident pair built from the class holding the lowest line is a point.
pub fn classify_bundles(s: &IncidenceStructure) -> Result<Classification, StructureError> {
    let pairs = s.incident_pairs();
    let per_pair: Vec<[(LineSet, LineId); 2]> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let split = sigma_split(s, a, b)?;
            Ok([
                class_bundle(s, a, b, &split.class_one)?,
                class_bundle(s, a, b, &split.class_two)?,
            ])
        })
        .collect::<Result<_, StructureError>>()?;

    let mut index: HashMap<LineSet, usize> = HashMap::new();
    let mut sets: Vec<(LineSet, (LineId, LineId, LineId))> = Vec::new();
    let mut pair_ids = Vec::with_capacity(pairs.len());
    for (&(a, b), both) in pairs.iter().zip(&per_pair) {
        let ids = both.clone().map(|(lines, c)| {
            *index.entry(lines.clone()).or_insert_with(|| {
                sets.push((lines, (a, b, c)));
                sets.len() - 1
            })
        });
        pair_ids.push(ids);
    }

    // color[i]: false = point, true = plane; every pair of bundles is constrained,
    // so the seed fixes everything and the rest is a consistency check
    let nb = sets.len();
    let opposite = |i: usize, j: usize| sets[i].0.intersection_len(&sets[j].0) != 1;
    let color: Vec<bool> = (0..nb).map(|i| i != 0 && opposite(0, i)).collect();
    let gens = |i: usize| {
        let (a, b, c) = sets[i].1;
        [a, b, c]
    };
    let label_bundle = |i: usize| {
        let (a, b, c) = sets[i].1;
        format!("[{} {} {}]", s.label(a), s.label(b), s.label(c))
    };
    let conflict = (0..nb).into_par_iter().find_map_first(|i| {
        ((i + 1)..nb)
            .find(|&j| (color[i] != color[j]) != opposite(i, j))
            .map(|j| (i, j))
    });
    if let Some((i, j)) = conflict {
        return Err(StructureError::ColoringInconsistent {
            first: label_bundle(i),
            second: label_bundle(j),
            reason: format!(
                "they share {} lines but received {} kinds",
                sets[i].0.intersection_len(&sets[j].0),
                if color[i] == color[j] {
                    "equal"
                } else {
                    "opposite"
                }
            ),
            at: [gens(i), gens(j)].concat(),
        });
    }
    if let Some(&[i, j]) = pair_ids.iter().find(|[i, j]| color[*i] == color[*j]) {
        return Err(StructureError::ColoringInconsistent {
            first: label_bundle(i),
            second: label_bundle(j),
            reason: "both classes of one sigma split received the same kind".into(),
            at: [gens(i), gens(j)].concat(),
        });
    }

    let mut slot = vec![0; nb];
    let mut points = Vec::new();
    let mut planes = Vec::new();
    for (i, (lines, generators)) in sets.into_iter().enumerate() {
        let (kind, list) = if color[i] {
            (BundleKind::Plane, &mut planes)
        } else {
            (BundleKind::Point, &mut points)
        };
        slot[i] = list.len();
        list.push(Bundle {
            kind,
            lines,
            generators,
        });
    }
    let mut cls = Classification::from_parts(s.len(), points, planes);
    cls.pair_bundles = pairs
        .iter()
        .zip(&pair_ids)
        .map(|(&pair, &[i, j])| {
            let (p, pl) = if color[i] { (j, i) } else { (i, j) };
            (pair, (slot[p], slot[pl]))
        })
        .collect();
    Ok(cls)
}

/// `a ∨ b` or `a ⊓ b`: computes `[a b c]` for every `c` in the class on the
/// requested side, checks they agree, and resolves the side against `cls`.
pub fn bundle(
    s: &IncidenceStructure,
    cls: &Classification,
    a: LineId,
    b: LineId,
    side: BundleKind,
) -> Result<Bundle, StructureError> {
    let split = sigma_split(s, a, b)?;
    let (point_class, plane_class) =
        cls.sides(&split)
            .ok_or_else(|| StructureError::ColoringInconsistent {
                first: s.label(a).to_owned(),
                second: s.label(b).to_owned(),
                reason: "pair is not covered by the classification".into(),
                at: vec![a, b],
            })?;
    let class = match side {
        BundleKind::Point => point_class,
        BundleKind::Plane => plane_class,
    };
    let (lines, c) = class_bundle(s, a, b, class)?;
    Ok(Bundle {
        kind: side,
        lines,
        generators: (a, b, c),
    })
}

/// A point lies on a plane iff they share a line; they then share at least two.
pub fn point_plane_incident(point: &Bundle, plane: &Bundle) -> Result<bool, StructureError> {
    if point.kind != BundleKind::Point {
        return Err(StructureError::KindMismatch { expected: "point" });
    }
    if plane.kind != BundleKind::Plane {
        return Err(StructureError::KindMismatch { expected: "plane" });
    }
    let shared = point.lines.intersection_len(&plane.lines);
    assert!(
        shared != 1,
        "a point and a plane never share exactly one line"
    );
    Ok(shared > 0)
}
