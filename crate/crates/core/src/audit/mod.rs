//! Axiom and theorem audits over arbitrary incidence structures.

mod axioms;
mod projectivity;
mod replay;

pub use axioms::{
    bundle_family, check_axiom1, check_axiom2, check_axiom2_1, check_axiom2_2, check_axiom2_3,
    check_axiom3, check_axiom4, check_join_in_bundle, check_sigma_structure, BundleFamily,
};
pub use projectivity::{check_p1, check_p1_iff_p2, check_p2, p1_iff_p2_from};
pub use replay::replay_witness;

use crate::incidence::{
    classify_bundles, verify_unique_plane, verify_unique_point, verify_unique_transversal,
    BundleKind, Classification, IncidenceStructure, StructureError,
};
use crate::reguli::{self, enumerate_reguli, Regulus};
use crate::report::{AuditItem, Scope, Status, DEFAULT_FAST_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Every case of every checker.
    Full,
    /// At most [`FAST_CASE_BUDGET`](crate::report::FAST_CASE_BUDGET) outer
    /// cases per checker, drawn with `seed`.
    Fast { seed: u64 },
}

impl Profile {
    pub fn fast() -> Profile {
        Profile::Fast {
            seed: DEFAULT_FAST_SEED,
        }
    }

    pub fn scope(&self) -> Scope {
        match *self {
            Profile::Full => Scope::Full,
            Profile::Fast { seed } => Scope::fast(seed),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Profile::Full => "full",
            Profile::Fast { .. } => "fast",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub digest: String,
    pub profile: Profile,
    pub items: Vec<AuditItem>,
}

impl AuditReport {
    pub fn overall(&self) -> Status {
        if self.items.iter().all(AuditItem::passed) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn item(&self, name: &str) -> Option<&AuditItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

/// Precomputed context shared by the checkers of one audit.
pub struct AuditContext<'s> {
    pub structure: &'s IncidenceStructure,
    pub classification: Result<Classification, StructureError>,
    pub reguli: Vec<Regulus>,
}

impl<'s> AuditContext<'s> {
    pub fn new(structure: &'s IncidenceStructure) -> AuditContext<'s> {
        let (classification, reguli) = rayon::join(
            || classify_bundles(structure),
            || enumerate_reguli(structure),
        );
        AuditContext {
            structure,
            classification,
            reguli,
        }
    }
}

/// Item names in report order.
pub const AXIOM_ITEMS: [&str; 10] = [
    "axiom1",
    "axiom2.1",
    "axiom2.2",
    "axiom2.3",
    "axiom3",
    "sigma_two_classes",
    "axiom4",
    "P1",
    "P2",
    "P1_iff_P2",
];

pub const THEOREM_ITEMS: [&str; 13] = [
    "join_in_plane",
    "meet_through_point",
    "unique_plane",
    "unique_point",
    "unique_transversal",
    "regulus_nonempty",
    "regulus_shape",
    "skew_pair_extends",
    "conjugate_well_defined",
    "conjugate_involution",
    "regulus_intersection_bound",
    "point_coverage",
    "plane_coverage",
];

/// The axiom checkers: 1 to 4, the Σ split they presuppose, P1, P2 and their
/// agreement.
pub fn axiom_items(ctx: &AuditContext<'_>, scope: Scope) -> Vec<AuditItem> {
    let s = ctx.structure;
    let mut items = vec![check_axiom1(s, scope)];
    items.extend(check_axiom2(s, scope));
    items.push(check_axiom3(s, scope));
    items.push(check_sigma_structure(s, scope));
    items.push(check_axiom4(&ctx.classification, scope));
    let p1 = check_p1(s, &ctx.reguli, scope);
    let p2 = check_p2(s, &ctx.reguli, scope);
    let both = p1_iff_p2_from(&p1, &p2);
    items.extend([p1, p2, both]);
    items
}

/// Statements about points, planes and reguli. Items needing points and
/// planes are skipped when classification failed.
pub fn theorem_items(ctx: &AuditContext<'_>, scope: Scope) -> Vec<AuditItem> {
    let s = ctx.structure;
    let reguli = &ctx.reguli;
    let mut items = Vec::new();
    match &ctx.classification {
        Ok(cls) => {
            items.push(check_join_in_bundle(cls, BundleKind::Point, scope));
            items.push(check_join_in_bundle(cls, BundleKind::Plane, scope));
            items.push(verify_unique_plane(s, cls, scope));
            items.push(verify_unique_point(s, cls, scope));
            items.push(verify_unique_transversal(s, cls, scope));
        }
        Err(e) => {
            for name in &THEOREM_ITEMS[..5] {
                items.push(AuditItem::skipped(
                    name,
                    format!("requires points and planes: {e}"),
                ));
            }
        }
    }
    items.push(reguli::check_regulus_nonempty(reguli));
    items.push(reguli::check_regulus_shape(s, reguli));
    match &ctx.classification {
        Ok(cls) => items.push(reguli::check_skew_pair_extends(s, cls, scope)),
        Err(e) => items.push(AuditItem::skipped(
            "skew_pair_extends",
            format!("requires points: {e}"),
        )),
    }
    items.push(reguli::check_conjugate_well_defined(s, reguli, scope));
    items.push(reguli::check_conjugate_involution(s, reguli, scope));
    items.push(reguli::check_two_line_intersection(reguli));
    match &ctx.classification {
        Ok(cls) => {
            items.push(reguli::check_point_coverage(s, cls, reguli, scope));
            items.push(reguli::check_plane_coverage(s, cls, reguli, scope));
        }
        Err(e) => {
            for name in ["point_coverage", "plane_coverage"] {
                items.push(AuditItem::skipped(
                    name,
                    format!("requires points and planes: {e}"),
                ));
            }
        }
    }
    items
}

/// Every axiom and theorem item, in [`AXIOM_ITEMS`] then [`THEOREM_ITEMS`]
/// order.
pub fn run_audit(s: &IncidenceStructure, profile: Profile) -> AuditReport {
    let ctx = AuditContext::new(s);
    let scope = profile.scope();
    let mut items = axiom_items(&ctx, scope);
    items.extend(theorem_items(&ctx, scope));
    AuditReport {
        digest: s.digest(),
        profile,
        items,
    }
}

/// Only the theorem items.
pub fn run_theorems(s: &IncidenceStructure, profile: Profile) -> AuditReport {
    let ctx = AuditContext::new(s);
    AuditReport {
        digest: s.digest(),
        profile,
        items: theorem_items(&ctx, profile.scope()),
    }
}
