//! The finite models PG(3,q): points, lines and planes over GF(q), with line
//! incidence computed both from shared points and from the Klein form of
//! Plücker coordinates.

use thiserror::Error;

use crate::galois::{FieldElement, FieldSpec};
use crate::incidence::{default_labels, IncidenceStructure};
use crate::lineset::LineSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(
        "incidence oracles disagree on lines {0} and {1}: shared point {2}, klein form zero {3}"
    )]
    IncidenceOracleMismatch(usize, usize, bool, bool),
}

/// A homogeneous 4-vector normalised so its first nonzero coordinate is 1.
/// Points and planes share this representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub coords: [FieldElement; 4],
}

pub type ProjPlane = ProjPoint;

impl ProjPoint {
    pub fn raw(&self) -> [u8; 4] {
        self.coords.map(|c| c.value() as u8)
    }
}

/// Scales `v` so its first nonzero entry is 1; `None` for the zero vector.
fn normalize<const N: usize>(field: &FieldSpec, v: [u8; N]) -> Option<[u8; N]> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv_raw(lead);
    Some(v.map(|x| field.mul_raw(x, inv)))
}

fn code(q: usize, v: [u8; 4]) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x as usize)
}

/// Position of a normalised vector in [`normalized_vectors`] order.
fn rank(q: usize, v: [u8; 4]) -> usize {
    let lead = v.iter().position(|&x| x != 0).expect("nonzero vector");
    let before: usize = (0..lead).map(|l| q.pow(3 - l as u32)).sum();
    before + v[lead + 1..].iter().fold(0, |acc, &x| acc * q + x as usize)
}

/// All normalised nonzero 4-vectors, ordered by the position of the leading 1
/// (leftmost first) and then lexicographically, so `(1,0,0,0)` comes first.
fn normalized_vectors(field: &'static FieldSpec) -> Vec<[u8; 4]> {
    let q = field.order() as u8;
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        for t in 0..(q as usize).pow(free as u32) {
            let mut v = [0u8; 4];
            v[lead] = 1;
            let mut rest = t;
            for i in (lead + 1..4).rev() {
                v[i] = (rest % q as usize) as u8;
                rest /= q as usize;
            }
            out.push(v);
        }
    }
    out
}

pub fn enumerate_points(field: &'static FieldSpec) -> Vec<ProjPoint> {
    normalized_vectors(field)
        .into_iter()
        .map(|v| ProjPoint {
            coords: v.map(|x| field.element(x as u32)),
        })
        .collect()
}

/// A line of PG(3,q): its point set and normalised Plücker vector
/// `(p01, p02, p03, p23, p31, p12)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelLine {
    pub id: usize,
    pub points: Vec<usize>,
    pub plucker: [FieldElement; 6],
}

fn plucker_raw(field: &FieldSpec, x: [u8; 4], y: [u8; 4]) -> [u8; 6] {
    let p =
        |i: usize, j: usize| field.sub_raw(field.mul_raw(x[i], y[j]), field.mul_raw(x[j], y[i]));
    [p(0, 1), p(0, 2), p(0, 3), p(2, 3), p(3, 1), p(1, 2)]
}

/// Every line exactly once, as its sorted point-index set, ordered by that
/// tuple.
pub fn enumerate_lines(field: &'static FieldSpec) -> Vec<ModelLine> {
    let points = normalized_vectors(field);
    lines_over(field, &points)
}

fn lines_over(field: &'static FieldSpec, points: &[[u8; 4]]) -> Vec<ModelLine> {
    let q = field.order() as usize;
    let mut index = vec![usize::MAX; q.pow(4)];
    for (i, &v) in points.iter().enumerate() {
        index[code(q, v)] = i;
    }
    let n = points.len();
    let mut covered = vec![LineSet::empty(n); n];
    let mut lines: Vec<ModelLine> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i].contains(j) {
                continue;
            }
            let (x, y) = (points[i], points[j]);
            // x and every y + t·x, t ∈ GF(q)
            let mut members = vec![i];
            for t in 0..q as u8 {
                let v: [u8; 4] =
                    std::array::from_fn(|k| field.add_raw(y[k], field.mul_raw(t, x[k])));
                let v = normalize(field, v).expect("independent points span a line");
                members.push(index[code(q, v)]);
            }
            members.sort_unstable();
            for &a in &members {
                for &b in &members {
                    covered[a].insert(b);
                }
            }
            let pl = normalize(field, plucker_raw(field, x, y)).expect("nonzero plucker vector");
            lines.push(ModelLine {
                id: 0,
                points: members,
                plucker: pl.map(|c| field.element(c as u32)),
            });
        }
    }
    lines.sort_by(|a, b| a.points.cmp(&b.points));
    for (id, line) in lines.iter_mut().enumerate() {
        line.id = id;
    }
    lines
}

/// The bilinear form pairing Plücker vectors; zero iff the lines meet or
/// coincide.
pub fn klein_form(l: &ModelLine, m: &ModelLine) -> FieldElement {
    let (p, q) = (&l.plucker, &m.plucker);
    p[0] * q[3] + p[1] * q[4] + p[2] * q[5] + p[3] * q[0] + p[4] * q[1] + p[5] * q[2]
}

/// `p01·p23 + p02·p31 + p03·p12`, zero on the Klein quadric.
pub fn quadric_value(l: &ModelLine) -> FieldElement {
    let p = &l.plucker;
    p[0] * p[3] + p[1] * p[4] + p[2] * p[5]
}

#[derive(Debug, Clone)]
pub struct Pg3Model {
    pub field: &'static FieldSpec,
    pub points: Vec<ProjPoint>,
    pub lines: Vec<ModelLine>,
    pub planes: Vec<ProjPlane>,
    /// `incidence[i]` holds the lines meeting line `i`, including `i`.
    pub incidence: Vec<LineSet>,
}

pub fn build_model(field: &'static FieldSpec) -> Result<Pg3Model, ModelError> {
    let raw = normalized_vectors(field);
    let lines = lines_over(field, &raw);
    let np = raw.len();
    let point_sets: Vec<LineSet> = lines
        .iter()
        .map(|l| LineSet::from_ids(np, l.points.iter().copied()))
        .collect();
    let n = lines.len();
    let mut incidence = vec![LineSet::empty(n); n];
    for i in 0..n {
        for j in i..n {
            let shared = point_sets[i].intersects(&point_sets[j]);
            let klein = klein_form(&lines[i], &lines[j]).is_zero();
            if shared != klein {
                return Err(ModelError::IncidenceOracleMismatch(i, j, shared, klein));
            }
            if shared {
                incidence[i].insert(j);
                incidence[j].insert(i);
            }
        }
    }
    let points = enumerate_points(field);
    Ok(Pg3Model {
        field,
        planes: points.clone(),
        points,
        lines,
        incidence,
    })
}

impl Pg3Model {
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Whether the point `point` lies on the plane `plane` (zero dot product).
    pub fn on_plane(&self, point: usize, plane: usize) -> bool {
        let f = self.field;
        let (x, h) = (self.points[point].raw(), self.planes[plane].raw());
        (0..4).fold(0, |acc, k| f.add_raw(acc, f.mul_raw(x[k], h[k]))) == 0
    }

    /// Index of the point with coordinates `v` (any nonzero multiple).
    pub fn point_index(&self, v: [u32; 4]) -> Option<usize> {
        let q = self.order();
        if v.iter().any(|&x| x >= q) {
            return None;
        }
        let norm = normalize(self.field, v.map(|x| x as u8))?;
        Some(rank(q as usize, norm))
    }

    /// Lines through a point, ascending.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        self.lines
            .iter()
            .filter(|l| l.points.binary_search(&point).is_ok())
            .map(|l| l.id)
            .collect()
    }

    /// Lines contained in a plane, ascending.
    pub fn lines_in(&self, plane: usize) -> Vec<usize> {
        self.lines
            .iter()
            .filter(|l| l.points.iter().all(|&p| self.on_plane(p, plane)))
            .map(|l| l.id)
            .collect()
    }

    /// The line through two distinct points.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.lines
            .iter()
            .find(|l| l.points.binary_search(&a).is_ok() && l.points.binary_search(&b).is_ok())
            .map(|l| l.id)
            .filter(|_| a != b)
    }

    /// Whether two lines share a point (the incidence matrix entry).
    pub fn meet(&self, a: usize, b: usize) -> bool {
        self.incidence[a].contains(b)
    }
}

/// Forgets coordinates, keeping line ids (labelled `L0, L1, …`) and incidence.
pub fn export_structure(model: &Pg3Model) -> IncidenceStructure {
    IncidenceStructure::new(default_labels(model.lines.len()), model.incidence.clone())
        .expect("model incidence is symmetric and reflexive")
}

/// Model and abstract structure for `GF(q)` in one step.
pub fn structure_for_order(q: u32) -> Result<(Pg3Model, IncidenceStructure), crate::Error> {
    let field = crate::galois::field_make(q)?;
    let model = build_model(field)?;
    let s = export_structure(&model);
    Ok((model, s))
}
