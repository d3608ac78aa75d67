use crate::constructions::floor_div;
use crate::error::{Error, Result};
use crate::graph::{find_clique, ColouredGraph, MonoClique, Tiling, VertexSet};
use crate::solvers::{clique_tiling_interpolated, find_perfect_clique_tiling, pack_cliques, TilingSearch, TILING_BUDGET};

use super::small::{extract_mono_triangle_k6, extract_two_disjoint_k8, majority_colour};

/// `R_2(3)`: every two-coloured `K_6` has a monochromatic triangle.
pub const RAMSEY_2_3: usize = 6;
/// `SR_2(3)`: the special-colouring analogue.
pub const SPECIAL_RAMSEY_2_3: usize = 4;

fn require_two_colours(g: &ColouredGraph) -> Result<()> {
    if g.r() != 2 {
        return Err(Error::Unsupported(format!("two colours required, got r = {}", g.r())));
    }
    Ok(())
}

/// At least `5δ - 4n` disjoint monochromatic triangles when
/// `4n/5 <= δ <= 5n/6`: find that many disjoint `K_6` and take a
/// monochromatic triangle in each.
pub fn moon_small(g: &ColouredGraph) -> Result<Tiling> {
    require_two_colours(g)?;
    generalized_moon_small(g, 2, 3)
}

/// `K_ℓ` analogue of [`moon_small`] for `r` colours: find
/// `(R-1)δ - (R-2)n` disjoint copies of `K_R`, `R = R_r(ℓ)`, and take a
/// monochromatic `K_ℓ` in each. Only `(r, ℓ) = (2, 3)` is supported.
///
/// The copies come from a direct packing search; if that runs out of
/// budget, from the `K_R`/`K_{R-1}` tiling of the degree-interpolation
/// argument, which always contains enough of them.
pub fn generalized_moon_small(g: &ColouredGraph, r: usize, ell: usize) -> Result<Tiling> {
    if (r, ell) != (2, 3) || g.r() != 2 {
        return Err(Error::Unsupported(format!(
            "Ramsey number known only for (r, ell) = (2, 3), got ({r}, {ell}) on an r = {} graph",
            g.r()
        )));
    }
    let (n, delta) = (g.n(), g.min_degree());
    let big = RAMSEY_2_3;
    if (big - 2) * n > (big - 1) * delta || big * delta > (big - 1) * n {
        return Err(Error::Precondition(format!(
            "need 4n/5 <= delta <= 5n/6, got n={n}, delta={delta}"
        )));
    }
    let want = (big - 1) * delta - (big - 2) * n;
    let cliques = match pack_cliques(g.adjacency(), big, want, TILING_BUDGET) {
        TilingSearch::Found(p) => p,
        TilingSearch::Absent => {
            return Err(Error::anomaly("moon_small", format!("no {want} disjoint K{big}"), g));
        }
        TilingSearch::BudgetExhausted => clique_tiling_interpolated(g, big, TILING_BUDGET)?.full,
    };
    let mut out = Vec::with_capacity(cliques.len());
    for clique in &cliques.cliques {
        out.push(extract_mono_triangle_k6(g, clique)?);
    }
    let result = Tiling::new(out);
    if result.size() < want {
        return Err(Error::anomaly("moon_small", format!("{} < {want} triangles", result.size()), g));
    }
    Ok(result)
}

/// At least `⌈(5δ - 4n)/2⌉` disjoint triangles of one colour when
/// `4n/5 <= δ <= 5n/6`: the majority colour of [`moon_small`].
pub fn bes_small(g: &ColouredGraph) -> Result<Tiling> {
    let mixed = moon_small(g)?;
    let c = majority_colour(&mixed.cliques, 2);
    Ok(Tiling::new(mixed.cliques.into_iter().filter(|t| t.colour == c).collect()))
}

/// At least `⌊(2δ - n)/3⌋` disjoint monochromatic triangles when
/// `δ >= 7n/8`.
///
/// While `δ > (7n+2)/8` on the remaining graph, a `K_6` is found, one of its
/// monochromatic triangles kept and its vertices deleted (the minimum degree
/// drops by at most three, keeping `δ >= 7n/8`). Then the `8(n-δ)` vertices
/// of lowest degree induce a graph with a perfect `K_8`-tiling, and every
/// `K_8` contributes two disjoint monochromatic triangles.
pub fn moon_large(g: &ColouredGraph) -> Result<Tiling> {
    require_two_colours(g)?;
    let (n, delta) = (g.n(), g.min_degree());
    if 8 * delta < 7 * n || n == 0 {
        return Err(Error::Precondition(format!("need delta >= 7n/8, got n={n}, delta={delta}")));
    }
    let want = floor_div(2 * delta as i64 - n as i64, 3).max(0) as usize;
    let mut alive = g.vertices();
    let mut out: Vec<MonoClique> = Vec::new();
    loop {
        let size = alive.len();
        let d = g.min_degree_within(alive);
        if 8 * d < 7 * size || size < 8 {
            return Err(Error::anomaly(
                "moon_large",
                format!("degree condition lost on {size} vertices with minimum degree {d}"),
                g,
            ));
        }
        if 8 * d <= 7 * size + 2 {
            out.extend(k8_tiling_pairs(g, alive, size - d)?);
            break;
        }
        let k6 = find_clique(g.adjacency(), alive, 6)
            .ok_or_else(|| Error::anomaly("moon_large", "no K6 in a graph of minimum degree above 7n/8", g))?;
        let t = extract_mono_triangle_k6(g, &k6)?;
        alive -= t.vertex_set();
        out.push(t);
    }
    let result = Tiling::new(out);
    if result.size() < want {
        return Err(Error::anomaly("moon_large", format!("{} < {want} triangles", result.size()), g));
    }
    Ok(result)
}

/// Two disjoint triangles from each `K_8` of a perfect `K_8`-tiling of the
/// `8k` lowest-degree vertices of `alive`.
fn k8_tiling_pairs(g: &ColouredGraph, alive: VertexSet, k: usize) -> Result<Vec<MonoClique>> {
    let mut order: Vec<usize> = alive.iter().collect();
    order.sort_by_key(|&v| ((g.neighbours(v) & alive).len(), v));
    order.truncate(8 * k);
    order.sort_unstable();
    let h = g.induced(&order);
    let packing = match find_perfect_clique_tiling(h.adjacency(), 8, TILING_BUDGET) {
        TilingSearch::Found(p) => p,
        TilingSearch::Absent => {
            return Err(Error::anomaly("moon_large", "no perfect K8-tiling of the low-degree part", g))
        }
        TilingSearch::BudgetExhausted => return Err(Error::BudgetExhausted(TILING_BUDGET)),
    };
    let mut out = Vec::with_capacity(2 * k);
    for clique in &packing.cliques {
        let verts: Vec<usize> = clique.iter().map(|&i| order[i]).collect();
        let (a, b) = extract_two_disjoint_k8(g, &verts)?;
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

