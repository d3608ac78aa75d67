//! Colour-blind clique tilings: perfect `K_t`-tilings by backtracking, and the
//! mixed `K_t`/`K_{t-1}` tilings obtained by padding with universal vertices.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{for_each_clique, CliquePacking, ColouredGraph, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingSearch {
    Found(CliquePacking),
    /// The search tree was exhausted: no perfect tiling exists.
    Absent,
    BudgetExhausted,
}

impl TilingSearch {
    pub fn found(self) -> Option<CliquePacking> {
        match self {
            TilingSearch::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Searches for a partition of the vertices `0..adjacency.len()` into
/// `t`-cliques.
///
/// Each step takes the uncovered vertex with the fewest uncovered
/// neighbours and tries every `(t-1)`-clique in its uncovered neighbourhood.
/// A branch dies as soon as some uncovered vertex has fewer than `t-1`
/// uncovered neighbours. Vertices with the same neighbourhood are
/// interchangeable, so only the lowest uncovered one of each such class is
/// offered as a clique member. `budget` counts search nodes.
pub fn find_perfect_clique_tiling(adjacency: &[VertexSet], t: usize, budget: u64) -> TilingSearch {
    let n = adjacency.len();
    if t == 0 || n % t != 0 {
        return TilingSearch::Absent;
    }
    let mut search = PerfectSearch {
        adjacency,
        class_of: twin_classes(adjacency),
        t,
        budget,
        nodes: 0,
        stack: Vec::with_capacity(n / t),
    };
    match search.run(VertexSet::full(n)) {
        Outcome::Done => TilingSearch::Found(CliquePacking {
            cliques: search.stack,
        }),
        Outcome::Fail => TilingSearch::Absent,
        Outcome::Budget => TilingSearch::BudgetExhausted,
    }
}

/// Class index per vertex; vertices share a class when their
/// neighbourhoods are equal.
fn twin_classes(adjacency: &[VertexSet]) -> Vec<usize> {
    let mut classes: Vec<VertexSet> = Vec::new();
    adjacency
        .iter()
        .map(|a| {
            classes.iter().position(|c| c == a).unwrap_or_else(|| {
                classes.push(*a);
                classes.len() - 1
            })
        })
        .collect()
}

/// Lowest member of each twin class within `within`.
fn representatives(class_of: &[usize], within: VertexSet) -> VertexSet {
    let mut seen = vec![false; class_of.len()];
    within.iter().filter(|&v| !std::mem::replace(&mut seen[class_of[v]], true)).collect()
}

/// Searches for `want` vertex-disjoint `t`-cliques.
///
/// Each node takes the available vertex with the fewest available
/// neighbours and either puts it in a clique with `t-1` of them or drops it.
/// A branch dies when fewer than `t` vertices per missing clique remain.
/// `budget` counts search nodes.
pub fn pack_cliques(adjacency: &[VertexSet], t: usize, want: usize, budget: u64) -> TilingSearch {
    let mut search = PackSearch {
        adjacency,
        class_of: twin_classes(adjacency),
        t,
        want,
        budget,
        nodes: 0,
        stack: Vec::with_capacity(want),
    };
    if t == 0 {
        return TilingSearch::Absent;
    }
    match search.run(VertexSet::full(adjacency.len())) {
        Outcome::Done => TilingSearch::Found(CliquePacking {
            cliques: search.stack,
        }),
        Outcome::Fail => TilingSearch::Absent,
        Outcome::Budget => TilingSearch::BudgetExhausted,
    }
}

struct PackSearch<'a> {
    adjacency: &'a [VertexSet],
    class_of: Vec<usize>,
    t: usize,
    want: usize,
    budget: u64,
    nodes: u64,
    stack: Vec<Vec<usize>>,
}

impl PackSearch<'_> {
    fn run(&mut self, mut avail: VertexSet) -> Outcome {
        loop {
            let missing = self.want - self.stack.len();
            if missing == 0 {
                return Outcome::Done;
            }
            if avail.len() < self.t * missing {
                return Outcome::Fail;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::Budget;
            }
            let Some((u, nbhd)) = avail
                .iter()
                .map(|v| (v, self.adjacency[v] & avail))
                .filter(|(_, s)| s.len() + 1 >= self.t)
                .min_by_key(|(v, s)| (s.len(), *v))
            else {
                return Outcome::Fail;
            };
            let reps = representatives(&self.class_of, nbhd);
            let mut result = Outcome::Fail;
            let adjacency = self.adjacency;
            for_each_clique(adjacency, reps, self.t - 1, |clique| {
                let mut used: VertexSet = clique.iter().collect();
                used.insert(u);
                let mut members = vec![u];
                members.extend_from_slice(clique);
                members.sort_unstable();
                self.stack.push(members);
                match self.run(avail - used) {
                    Outcome::Fail => {}
                    done => {
                        result = done;
                        return ControlFlow::Break(());
                    }
                }
                self.stack.pop();
                ControlFlow::Continue(())
            });
            if !matches!(result, Outcome::Fail) {
                return result;
            }
            avail.remove(u);
        }
    }
}

enum Outcome {
    Done,
    Fail,
    Budget,
}

struct PerfectSearch<'a> {
    adjacency: &'a [VertexSet],
    class_of: Vec<usize>,
    t: usize,
    budget: u64,
    nodes: u64,
    stack: Vec<Vec<usize>>,
}

impl PerfectSearch<'_> {
    fn run(&mut self, uncovered: VertexSet) -> Outcome {
        if uncovered.is_empty() {
            return Outcome::Done;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Budget;
        }
        let (u, nbhd) = uncovered
            .iter()
            .map(|v| (v, self.adjacency[v] & uncovered))
            .min_by_key(|(v, s)| (s.len(), *v))
            .expect("non-empty");
        if nbhd.len() + 1 < self.t {
            return Outcome::Fail;
        }
        let reps = representatives(&self.class_of, nbhd);
        let mut result = Outcome::Fail;
        let adjacency = self.adjacency;
        let k = self.t - 1;
        for_each_clique(adjacency, reps, k, |clique| {
            let mut used: VertexSet = clique.iter().collect();
            used.insert(u);
            let mut members = vec![u];
            members.extend_from_slice(clique);
            members.sort_unstable();
            self.stack.push(members);
            match self.run(uncovered - used) {
                Outcome::Done => {
                    result = Outcome::Done;
                    return ControlFlow::Break(());
                }
                Outcome::Budget => {
                    result = Outcome::Budget;
                    return ControlFlow::Break(());
                }
                Outcome::Fail => {}
            }
            self.stack.pop();
            ControlFlow::Continue(())
        });
        result
    }
}

/// A tiling with `(t-1)δ - (t-2)n` disjoint `K_t` and `(t-1)n - tδ`
/// disjoint `K_{t-1}`, all mutually disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolatedTiling {
    pub full: CliquePacking,
    pub short: CliquePacking,
}

/// Default node budget for the padded perfect-tiling search.
pub const TILING_BUDGET: u64 = 20_000_000;

/// For `(1 - 1/(t-1)) n <= δ(g) <= (1 - 1/t) n`: adds `s = (t-1)n - tδ`
/// independent vertices joined to everything, finds a perfect `K_t`-tiling
/// of the padded graph and strips the added vertices. Each padded vertex
/// lies in exactly one clique, which becomes a `K_{t-1}`.
pub fn clique_tiling_interpolated(g: &ColouredGraph, t: usize, budget: u64) -> Result<InterpolatedTiling> {
    let n = g.n();
    let delta = g.min_degree();
    if t < 2 || n == 0 || (t - 2) * n > (t - 1) * delta || t * delta > (t - 1) * n {
        return Err(Error::Precondition(format!(
            "need (1-1/(t-1))n <= delta <= (1-1/t)n, got n={n}, delta={delta}, t={t}"
        )));
    }
    let s = (t - 1) * n - t * delta;
    if n + s > MAX_VERTICES {
        return Err(Error::Unsupported(format!(
            "padded graph has {} vertices, above {MAX_VERTICES}",
            n + s
        )));
    }
    let mut adjacency: Vec<VertexSet> = g.adjacency().to_vec();
    let real = VertexSet::full(n);
    for a in adjacency.iter_mut() {
        for x in n..n + s {
            a.insert(x);
        }
    }
    adjacency.extend(std::iter::repeat(real).take(s));

    let packing = match find_perfect_clique_tiling(&adjacency, t, budget) {
        TilingSearch::Found(p) => p,
        TilingSearch::Absent => {
            return Err(Error::anomaly(
                "clique_tiling_interpolated",
                format!("no perfect K{t}-tiling of the padded graph"),
                g,
            ))
        }
        TilingSearch::BudgetExhausted => return Err(Error::BudgetExhausted(budget)),
    };
    let mut full = Vec::new();
    let mut short = Vec::new();
    for mut clique in packing.cliques {
        let before = clique.len();
        clique.retain(|&v| v < n);
        debug_assert!(before - clique.len() <= 1, "padding vertices are independent");
        if clique.len() == before {
            full.push(clique);
        } else {
            short.push(clique);
        }
    }
    full.sort();
    short.sort();
    debug_assert_eq!(full.len() + (t - 2) * n, (t - 1) * delta);
    debug_assert_eq!(short.len(), s);
    Ok(InterpolatedTiling {
        full: CliquePacking { cliques: full },
        short: CliquePacking { cliques: short },
    })
}
