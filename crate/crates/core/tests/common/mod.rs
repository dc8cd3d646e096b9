#![allow(dead_code)]

use std::collections::BTreeSet;

use regulus_core::pg3::{structure_for_order, Pg3Model};
use regulus_core::IncidenceStructure;

pub fn pg3(q: u32) -> (Pg3Model, IncidenceStructure) {
    structure_for_order(q).unwrap()
}

pub type Family = BTreeSet<Vec<usize>>;

/// Lines through each model point, found by scanning coordinates.
pub fn model_point_pencils(m: &Pg3Model) -> Family {
    (0..m.points.len())
        .map(|p| {
            m.lines
                .iter()
                .filter(|l| l.points.contains(&p))
                .map(|l| l.id)
                .collect()
        })
        .collect()
}

/// Lines lying in each model plane.
pub fn model_plane_pencils(m: &Pg3Model) -> Family {
    (0..m.planes.len())
        .map(|h| {
            m.lines
                .iter()
                .filter(|l| l.points.iter().all(|&p| m.on_plane(p, h)))
                .map(|l| l.id)
                .collect()
        })
        .collect()
}

/// Whether two model lines share a point, by comparing point lists.
pub fn share_point(m: &Pg3Model, a: usize, b: usize) -> bool {
    m.lines[a]
        .points
        .iter()
        .any(|p| m.lines[b].points.contains(p))
}

/// Model lines meeting each of `lines`, by point lists.
pub fn transversals(m: &Pg3Model, lines: &[usize]) -> Vec<usize> {
    (0..m.lines.len())
        .filter(|&t| lines.iter().all(|&l| share_point(m, t, l)))
        .collect()
}
