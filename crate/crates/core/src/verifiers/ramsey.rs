use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_clique, Colour, ColouredGraph, GraphJson, VertexSet};

use super::enumerate::{enumerate_colourings, Skeleton, Visit};

/// Outcome of a Ramsey-type search over `K_1, ..., K_{n_max}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub ell: usize,
    pub r: usize,
    /// Smallest `n` forcing a monochromatic `K_ℓ`, or `None` if it exceeds
    /// `n_max`.
    pub value: Option<usize>,
    /// An avoiding colouring on `value - 1` vertices, or on the largest
    /// scanned size when `value` is `None`.
    pub witness: Option<GraphJson>,
    /// `(n, universe size, qualifying colourings)` per scanned size.
    pub scanned: Vec<(usize, u128, u64)>,
}

fn has_mono_clique(g: &ColouredGraph, ell: usize) -> bool {
    if ell <= 1 {
        return g.n() >= ell;
    }
    (0..g.r()).any(|c| {
        let adj: Vec<VertexSet> = (0..g.n()).map(|v| g.colour_neighbours(v, Colour(c as u8))).collect();
        find_clique(&adj, g.vertices(), ell).is_some()
    })
}

fn search(ell: usize, r: usize, n_max: usize, special: bool) -> Result<RamseyResult> {
    if r < 2 || r > crate::graph::MAX_COLOURS {
        return Err(Error::Unsupported(format!("r = {r} colours")));
    }
    let mut out = RamseyResult {
        ell,
        r,
        value: None,
        witness: None,
        scanned: Vec::new(),
    };
    for n in 1..=n_max {
        let sk = Skeleton::complete(n);
        let universe = sk
            .universe(r)
            .filter(|&u| u <= 1 << 30)
            .ok_or_else(|| Error::Unsupported(format!("{r}-colourings of K{n} exceed 2^30")))?;
        // Colour 0 avoids vertex 0 exactly when every digit of an edge at 0 is nonzero.
        let apex: Vec<usize> = (0..sk.edge_count()).filter(|&i| sk.pairs[i].0 == 0).collect();
        let digit = |code: u128, i: usize| (code / (r as u128).pow(i as u32)) % r as u128;
        let scan = enumerate_colourings(r, sk.edge_count(), 0..universe, false, 0, |code| {
            if special && apex.iter().any(|&i| digit(code, i) == 0) {
                return Visit::skip();
            }
            Visit::check(!has_mono_clique(&sk.graph(code, r), ell))
        })?;
        out.scanned.push((n, universe, scan.qualifying));
        match scan.witnesses.first() {
            Some(&code) => out.witness = Some(GraphJson::from(&sk.graph(code, r))),
            None => {
                out.value = Some(n);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Smallest `n <= n_max` such that every `r`-colouring of `K_n` has a
/// monochromatic `K_ℓ`, by exhaustive search.
pub fn compute_ramsey(ell: usize, r: usize, n_max: usize) -> Result<RamseyResult> {
    search(ell, r, n_max, false)
}

/// As [`compute_ramsey`] over special colourings: vertex 0 meets no edge of
/// colour 0 (every special colouring is of this form up to relabelling).
pub fn compute_special_ramsey(ell: usize, r: usize, n_max: usize) -> Result<RamseyResult> {
    search(ell, r, n_max, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let k2 = compute_ramsey(2, 2, 4).unwrap();
        assert_eq!(k2.value, Some(2));
        assert_eq!(k2.witness.unwrap().n, 1);

        let short = compute_ramsey(3, 2, 5).unwrap();
        assert_eq!(short.value, None);
        assert_eq!(short.witness.unwrap().n, 5);

        let sr = compute_special_ramsey(3, 2, 6).unwrap();
        assert_eq!(sr.value, Some(4));
        assert_eq!(sr.scanned.last().unwrap(), &(4, 64, 8));
        let w = sr.witness.unwrap().to_graph().unwrap();
        assert_eq!(w.colour(0, 1), Some(Colour::BLUE));
        assert_eq!(w.colour(0, 2), Some(Colour::BLUE));
        assert_eq!(w.colour(1, 2), Some(Colour::RED));
    }
}
