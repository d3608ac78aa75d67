use serde::{Deserialize, Serialize};

use crate::constructions::{bound_report, build, ceil_div, floor_div, BoundStatus, ConstructionParams, Variant};
use crate::error::{Error, Result};
use crate::solvers::{max_mixed_tiling, max_single_colour_tiling, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// Disjoint monochromatic triangles of any colours.
    Mixed,
    /// Disjoint monochromatic triangles all of one colour.
    SingleColour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub construction: Variant,
    pub n: usize,
    pub delta: usize,
    pub objective: Objective,
    pub optimum: usize,
    pub proved_optimal: bool,
    pub nodes: u64,
    /// Upper bound the construction is built to attain.
    pub lemma_bound: i64,
    /// Proven lower bound for every graph at `(n, δ)`, if one applies.
    pub theorem_bound: Option<i64>,
    pub within_lemma_bound: bool,
    pub attains_lemma_bound: bool,
    pub meets_theorem: Option<bool>,
}

impl AuditRow {
    /// Proved optimal, within the construction's bound, and equal to any
    /// matching theorem bound.
    pub fn passes(&self) -> bool {
        self.proved_optimal
            && self.within_lemma_bound
            && self.meets_theorem.unwrap_or(true)
            && (self.theorem_bound != Some(self.lemma_bound) || self.attains_lemma_bound)
    }
}

/// The objective a construction is extremal for and the largest tiling it
/// admits under that objective.
pub fn lemma_bound(variant: Variant, n: usize, delta: usize) -> Result<(Objective, i64)> {
    let (ni, d) = (n as i64, delta as i64);
    Ok(match variant {
        Variant::ExTriangle => (Objective::Mixed, bound_report(n, delta)?.extremal_min),
        Variant::ExTriangleAlt => (Objective::Mixed, floor_div(2 * d - ni, 3)),
        Variant::ExBes1 => (Objective::SingleColour, floor_div(d + 1, 5)),
        Variant::ExBes2 => (Objective::SingleColour, floor_div(4 * d - 3 * ni + 1, 3)),
        Variant::ExBes3 => (Objective::SingleColour, ceil_div(5 * d - 4 * ni, 2)),
        Variant::PinnedApex => (Objective::Mixed, 5 * d - 4 * ni),
        Variant::BadlyK5 | Variant::SpecialBlowup => {
            return Err(Error::Unsupported(format!("no tightness bound for {variant}")))
        }
    })
}

fn theorem_bound(objective: Objective, n: usize, delta: usize) -> Option<i64> {
    let b = bound_report(n, delta).ok()?;
    match objective {
        Objective::Mixed => (b.moon_status == BoundStatus::Proven).then_some(b.moon_bound),
        Objective::SingleColour => b.bes_bound.filter(|_| b.bes_status == BoundStatus::Proven),
    }
}

/// The fixed audit grid: the seven pinned instances followed by a few
/// further admissible sizes.
pub fn audit_grid() -> Vec<(Variant, usize, usize)> {
    vec![
        (Variant::ExTriangle, 12, 10),
        (Variant::ExTriangle, 30, 25),
        (Variant::ExTriangleAlt, 24, 21),
        (Variant::ExBes1, 9, 8),
        (Variant::ExBes1, 22, 16),
        (Variant::ExBes2, 25, 22),
        (Variant::ExBes3, 24, 20),
        (Variant::ExTriangle, 15, 13),
        (Variant::ExTriangleAlt, 16, 14),
        (Variant::ExBes1, 14, 13),
        (Variant::ExBes3, 20, 17),
        (Variant::PinnedApex, 16, 13),
    ]
}

/// Runs the exact solver on each construction and compares against its
/// bounds.
pub fn audit_tightness(cases: &[(Variant, usize, usize)], opts: &SolveOptions) -> Result<Vec<AuditRow>> {
    cases
        .iter()
        .map(|&(variant, n, delta)| {
            let (objective, bound) = lemma_bound(variant, n, delta)?;
            let c = build(&ConstructionParams {
                variant,
                n,
                delta,
                extra: vec![],
            })?;
            let res = match objective {
                Objective::Mixed => max_mixed_tiling(&c.graph, opts),
                Objective::SingleColour => max_single_colour_tiling(&c.graph, opts),
            };
            res.tiling.verify_triangles(&c.graph, objective == Objective::SingleColour)?;
            let theorem = theorem_bound(objective, n, delta);
            let opt = res.optimum as i64;
            Ok(AuditRow {
                construction: variant,
                n,
                delta,
                objective,
                optimum: res.optimum,
                proved_optimal: res.proved_optimal,
                nodes: res.nodes_explored,
                lemma_bound: bound,
                theorem_bound: theorem,
                within_lemma_bound: opt <= bound,
                attains_lemma_bound: opt == bound,
                meets_theorem: theorem.map(|t| opt >= t),
            })
        })
        .collect()
}
