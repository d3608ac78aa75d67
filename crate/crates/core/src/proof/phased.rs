//! Three-phase tiling of complete two-coloured graphs around a large
//! monochromatic clique `K`.
//!
//! Phase I removes monochromatic triangles outside `K` greedily. Phase II
//! attaches each remaining outside vertex with two `K`-coloured edges into
//! `K` to such a pair. Phase III uses the `K`-vertices `S` with no
//! `K`-coloured edge to the rest: each of them turns the remaining outside
//! set into a special colouring on four or more vertices, which contains a
//! monochromatic triangle. Leftover `K`-vertices are cut into triangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_clique, Colour, ColouredGraph, MonoClique, Tiling, VertexSet};

use super::moon::{RAMSEY_2_3, SPECIAL_RAMSEY_2_3};

const STEP: &str = "phased_tiler";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhasedMode {
    /// `K` must have `(ℓ-1)·R_r(ℓ)` vertices; every phase invariant is
    /// enforced and the final count checked.
    Strict,
    /// Any monochromatic `K`; broken invariants are recorded in the notes.
    Relaxed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasedReport {
    pub tiling: Tiling,
    /// Triangles from phases I, II, III and the leftover `K`-vertices.
    pub phase_counts: [usize; 4],
    /// `⌊(n - SR_r(ℓ) + 2)/ℓ⌋` in strict mode.
    pub guaranteed: Option<usize>,
    pub guarantee_met: bool,
    pub notes: Vec<String>,
}

/// `K` size the strict mode requires for `(r, ℓ) = (2, 3)`.
pub const PHASED_CLIQUE_SIZE: usize = 2 * RAMSEY_2_3;

/// Lexicographically first monochromatic `K_k`, trying colours in order.
pub fn find_mono_clique(g: &ColouredGraph, k: usize) -> Option<MonoClique> {
    (0..g.r()).find_map(|c| {
        let c = Colour(c as u8);
        let adj: Vec<VertexSet> = (0..g.n()).map(|v| g.colour_neighbours(v, c)).collect();
        find_clique(&adj, g.vertices(), k).map(|verts| MonoClique::new_unchecked(verts, c))
    })
}

pub fn phased_tiler(g: &ColouredGraph, r: usize, ell: usize, k: &MonoClique, mode: PhasedMode) -> Result<PhasedReport> {
    if (r, ell) != (2, 3) || g.r() != 2 {
        return Err(Error::Unsupported(format!(
            "special Ramsey number known only for (r, ell) = (2, 3), got ({r}, {ell}) on an r = {} graph",
            g.r()
        )));
    }
    if !g.is_complete() {
        return Err(Error::Precondition("host graph must be complete".into()));
    }
    k.verify(g)?;
    let mut notes = Vec::new();
    if k.len() != PHASED_CLIQUE_SIZE {
        let msg = format!("K has {} vertices, the guarantee needs {PHASED_CLIQUE_SIZE}", k.len());
        match mode {
            PhasedMode::Strict => return Err(Error::Precondition(msg)),
            PhasedMode::Relaxed => notes.push(msg),
        }
    }
    let red = k.colour;
    let mut outside = g.vertices() - k.vertex_set();
    let mut spare = k.vertex_set();
    let mut out: Vec<MonoClique> = Vec::new();
    let mut counts = [0usize; 4];

    while let Some(t) = g.mono_triangles_within(outside).into_iter().next() {
        outside -= t.vertex_set();
        out.push(t);
        counts[0] += 1;
    }
    if mode == PhasedMode::Strict && outside.len() >= RAMSEY_2_3 {
        return Err(Error::anomaly(STEP, format!("{} outside vertices after phase I", outside.len()), g));
    }

    while let Some((v, pair)) = outside.iter().find_map(|v| {
        let pair: Vec<usize> = (g.colour_neighbours(v, red) & spare).iter().take(2).collect();
        (pair.len() == 2).then_some((v, pair))
    }) {
        outside.remove(v);
        spare.remove(pair[0]);
        spare.remove(pair[1]);
        out.push(MonoClique::new_unchecked(vec![v, pair[0], pair[1]], red));
        counts[1] += 1;
    }
    if spare.len() < (ell - 1) * outside.len() {
        let msg = format!("{} spare K-vertices for {} outside vertices after phase II", spare.len(), outside.len());
        match mode {
            PhasedMode::Strict => return Err(Error::anomaly(STEP, &msg, g)),
            PhasedMode::Relaxed => notes.push(msg),
        }
    }

    let mut s: Vec<usize> = spare
        .iter()
        .filter(|&c| (g.colour_neighbours(c, red) & outside).is_empty())
        .take(outside.len())
        .collect();
    if s.len() < outside.len() {
        let msg = format!("only {} of {} phase III vertices available", s.len(), outside.len());
        match mode {
            PhasedMode::Strict => return Err(Error::anomaly(STEP, &msg, g)),
            PhasedMode::Relaxed => notes.push(msg),
        }
    }
    s.reverse();
    while outside.len() + 1 >= SPECIAL_RAMSEY_2_3 {
        let Some(v) = s.pop() else {
            notes.push(format!("phase III stopped with {} outside vertices", outside.len()));
            break;
        };
        let mut within = outside;
        within.insert(v);
        let t = g.mono_triangles_within(within).into_iter().next().ok_or_else(|| {
            Error::anomaly(STEP, format!("special colouring on {within:?} without a monochromatic triangle"), g)
        })?;
        if t.vertex_set().contains(v) {
            spare.remove(v);
        } else {
            s.push(v);
        }
        outside -= t.vertex_set();
        out.push(t);
        counts[2] += 1;
    }

    let rest = spare.to_vec();
    for chunk in rest.chunks_exact(ell) {
        out.push(MonoClique::new_unchecked(chunk.to_vec(), red));
        counts[3] += 1;
    }

    let mut tiling = Tiling::new(out);
    tiling.sort();
    tiling
        .verify(g)
        .map_err(|e| Error::anomaly(STEP, format!("invalid output: {e}"), g))?;
    let guaranteed = (mode == PhasedMode::Strict).then(|| (g.n() + 2).saturating_sub(SPECIAL_RAMSEY_2_3) / ell);
    let guarantee_met = guaranteed.is_none_or(|want| tiling.size() >= want);
    if !guarantee_met {
        return Err(Error::anomaly(
            STEP,
            format!("{} triangles, guarantee {}", tiling.size(), guaranteed.unwrap_or(0)),
            g,
        ));
    }
    Ok(PhasedReport {
        tiling,
        phase_counts: counts,
        guaranteed,
        guarantee_met,
        notes,
    })
}
