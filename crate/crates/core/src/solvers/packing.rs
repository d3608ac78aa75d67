//! Exact maximum packing of vertex-disjoint monochromatic triangles.
//!
//! Depth-first branch and bound over the triangle hypergraph. Each node
//! branches on the lowest vertex still covered by a live triangle: first every
//! live triangle through it (in lexicographic order), then discarding it. A
//! node is pruned when the packing so far plus an upper bound on the live
//! triangles cannot beat the incumbent. The bound is the least of
//!
//! * `⌊|C|/3⌋`, `C` the vertices covered by live triangles;
//! * `|H|`, `H` a greedy vertex set meeting every live triangle;
//! * `⌊|C \ U|/2⌋`, `U` a greedy independent set of the graph joining two
//!   vertices that lie in a common live triangle (a packed triangle meets
//!   `U` at most once).

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Colour, ColouredGraph, MonoClique, Tiling, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub optimum: usize,
    pub tiling: Tiling,
    pub nodes_explored: u64,
    /// The search tree was exhausted, so no larger packing exists.
    pub proved_optimal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Maximum number of search-tree nodes.
    pub budget: u64,
    /// Worker threads; `1` gives the deterministic reference witness.
    pub workers: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: 100_000_000,
            workers: 1,
        }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: u64) -> Self {
        SolveOptions {
            budget,
            ..Self::default()
        }
    }
}

/// Maximum number of disjoint monochromatic triangles, colours mixed.
pub fn max_mixed_tiling(g: &ColouredGraph, opts: &SolveOptions) -> SolveResult {
    let tris = g.mono_triangles();
    let shared = Shared::new(opts.budget, 0);
    let (best, witness) = solve(&tris, &shared, opts.workers);
    finish(&tris, best, witness, &shared)
}

/// Maximum over colours `c` of the number of disjoint colour-`c` triangles.
pub fn max_single_colour_tiling(g: &ColouredGraph, opts: &SolveOptions) -> SolveResult {
    let all = g.mono_triangles();
    let shared = Shared::new(opts.budget, 0);
    let mut best: Option<(Vec<MonoClique>, Vec<u32>)> = None;
    for c in 0..g.r() {
        let tris: Vec<MonoClique> = all.iter().filter(|t| t.colour == Colour(c as u8)).cloned().collect();
        let before = shared.best.load(Ordering::Relaxed);
        let (size, witness) = solve(&tris, &shared, opts.workers);
        if size > before || best.is_none() {
            best = Some((tris, witness));
        }
    }
    match best {
        Some((tris, witness)) => {
            let size = witness.len();
            finish(&tris, size, witness, &shared)
        }
        None => finish(&[], 0, vec![], &shared),
    }
}

fn finish(tris: &[MonoClique], best: usize, witness: Vec<u32>, shared: &Shared) -> SolveResult {
    debug_assert_eq!(best, witness.len());
    let mut tiling = Tiling::new(witness.iter().map(|&i| tris[i as usize].clone()).collect());
    tiling.sort();
    SolveResult {
        optimum: tiling.size(),
        tiling,
        nodes_explored: shared.nodes.load(Ordering::Relaxed).min(shared.budget),
        proved_optimal: !shared.aborted.load(Ordering::Relaxed),
    }
}

struct Shared {
    budget: u64,
    nodes: AtomicU64,
    best: AtomicUsize,
    aborted: AtomicBool,
}

impl Shared {
    fn new(budget: u64, best: usize) -> Self {
        Shared {
            budget,
            nodes: AtomicU64::new(0),
            best: AtomicUsize::new(best),
            aborted: AtomicBool::new(false),
        }
    }
}

struct Tri {
    verts: [usize; 3],
    mask: VertexSet,
}

struct Search<'a> {
    tris: &'a [Tri],
    shared: &'a Shared,
    chosen: Vec<u32>,
    best: Vec<u32>,
    found: bool,
}

/// Runs the search on `tris`, trying to beat `shared.best`. Returns the size
/// and triangle indices of the best packing found by this call (empty if it
/// found nothing better than the incoming incumbent).
fn solve(cliques: &[MonoClique], shared: &Shared, workers: usize) -> (usize, Vec<u32>) {
    let tris: Vec<Tri> = cliques
        .iter()
        .map(|t| Tri {
            verts: [t.vertices[0], t.vertices[1], t.vertices[2]],
            mask: t.vertex_set(),
        })
        .collect();
    let live: Vec<u32> = (0..tris.len() as u32).collect();

    let mut greedy = greedy_packing(&tris, &live);
    if greedy.len() > shared.best.load(Ordering::Relaxed) {
        shared.best.fetch_max(greedy.len(), Ordering::Relaxed);
    } else {
        greedy.clear();
    }

    let found = if workers <= 1 {
        let mut s = Search::new(&tris, shared);
        s.dfs(&live);
        s.found.then_some(s.best)
    } else {
        solve_split(&tris, &live, shared, workers)
    };
    let witness = found.unwrap_or(greedy);
    (witness.len(), witness)
}

/// Root split: each first-level branch runs as an independent task sharing
/// the incumbent size. The optimum and proof status match the sequential
/// search; the witness may not.
fn solve_split(tris: &[Tri], live: &[u32], shared: &Shared, workers: usize) -> Option<Vec<u32>> {
    shared.nodes.fetch_add(1, Ordering::Relaxed);
    let Some(v) = lowest_vertex(tris, live) else {
        return None;
    };
    let mut branches: Vec<(Vec<u32>, Vec<u32>)> = live
        .iter()
        .filter(|&&t| tris[t as usize].mask.contains(v))
        .map(|&t| (vec![t], filter_disjoint(tris, live, tris[t as usize].mask)))
        .collect();
    branches.push((vec![], filter_disjoint(tris, live, VertexSet::singleton(v))));

    let results: Mutex<Vec<(usize, Vec<u32>)>> = Mutex::new(Vec::new());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| {
        branches.par_iter().enumerate().for_each(|(i, (prefix, rest))| {
            let mut s = Search::new(tris, shared);
            s.chosen.clone_from(prefix);
            s.dfs(rest);
            if s.found {
                results.lock().expect("no poisoning").push((i, s.best));
            }
        });
    });
    let results = results.into_inner().expect("no poisoning");
    results
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))
        .map(|r| r.1)
}

impl<'a> Search<'a> {
    fn new(tris: &'a [Tri], shared: &'a Shared) -> Self {
        Search {
            tris,
            shared,
            chosen: Vec::new(),
            best: Vec::new(),
            found: false,
        }
    }

    fn incumbent(&self) -> usize {
        self.shared.best.load(Ordering::Relaxed)
    }

    fn dfs(&mut self, live: &[u32]) {
        let shared = self.shared;
        if shared.aborted.load(Ordering::Relaxed) {
            return;
        }
        if shared.nodes.fetch_add(1, Ordering::Relaxed) >= shared.budget {
            shared.aborted.store(true, Ordering::Relaxed);
            return;
        }
        let depth = self.chosen.len();
        if depth > self.incumbent() {
            shared.best.fetch_max(depth, Ordering::Relaxed);
            self.best.clone_from(&self.chosen);
            self.found = true;
        }
        let Some(v) = lowest_vertex(self.tris, live) else {
            return;
        };
        let bound = depth + upper_bound(self.tris, live, self.incumbent().saturating_sub(depth));
        if bound <= self.incumbent() {
            return;
        }
        // `v` is the least live vertex, so the triangles through it are
        // exactly the leading run of `live`.
        for (i, &t) in live.iter().enumerate() {
            let tri = &self.tris[t as usize];
            if tri.verts[0] != v {
                break;
            }
            let rest = filter_disjoint(self.tris, &live[i + 1..], tri.mask);
            self.chosen.push(t);
            self.dfs(&rest);
            self.chosen.pop();
            if shared.aborted.load(Ordering::Relaxed) || bound <= self.incumbent() {
                return;
            }
        }
        let rest = filter_disjoint(self.tris, live, VertexSet::singleton(v));
        self.dfs(&rest);
    }
}

fn lowest_vertex(tris: &[Tri], live: &[u32]) -> Option<usize> {
    live.iter().map(|&t| tris[t as usize].verts[0]).min()
}

fn filter_disjoint(tris: &[Tri], live: &[u32], used: VertexSet) -> Vec<u32> {
    live.iter()
        .copied()
        .filter(|&t| tris[t as usize].mask.is_disjoint(&used))
        .collect()
}

/// Upper bound on the packing number of `live`. Stops refining once the
/// bound is at most `need`, since the caller prunes anyway.
fn upper_bound(tris: &[Tri], live: &[u32], need: usize) -> usize {
    let cover = live
        .iter()
        .fold(VertexSet::empty(), |acc, &t| acc | tris[t as usize].mask);
    let mut bound = cover.len() / 3;
    if bound <= need {
        return bound;
    }

    let mut shadow = [VertexSet::empty(); MAX_VERTICES];
    for &t in live {
        let [a, b, c] = tris[t as usize].verts;
        shadow[a].insert(b);
        shadow[a].insert(c);
        shadow[b].insert(a);
        shadow[b].insert(c);
        shadow[c].insert(a);
        shadow[c].insert(b);
    }
    let mut free = cover;
    let mut independent = 0;
    while !free.is_empty() {
        let v = free
            .iter()
            .min_by_key(|&v| (shadow[v] & free).len())
            .expect("non-empty");
        independent += 1;
        free -= shadow[v];
        free.remove(v);
    }
    bound = bound.min((cover.len() - independent) / 2);
    if bound <= need {
        return bound;
    }

    let mut remaining: Vec<u32> = live.to_vec();
    let mut hitting = 0;
    let mut count = [0u32; MAX_VERTICES];
    while !remaining.is_empty() && hitting < bound {
        count.iter_mut().for_each(|c| *c = 0);
        for &t in &remaining {
            for &v in &tris[t as usize].verts {
                count[v] += 1;
            }
        }
        let v = (0..MAX_VERTICES).max_by_key(|&v| (count[v], std::cmp::Reverse(v))).expect("non-empty");
        hitting += 1;
        remaining.retain(|&t| !tris[t as usize].mask.contains(v));
    }
    if remaining.is_empty() {
        bound = bound.min(hitting);
    }
    bound
}

/// Lexicographic greedy packing, then a pass preferring triangles whose
/// vertices lie in few other triangles; the larger wins.
fn greedy_packing(tris: &[Tri], live: &[u32]) -> Vec<u32> {
    let pack = |order: &[u32]| {
        let mut used = VertexSet::empty();
        let mut out = Vec::new();
        for &t in order {
            let m = tris[t as usize].mask;
            if m.is_disjoint(&used) {
                used |= m;
                out.push(t);
            }
        }
        out
    };
    let lex = pack(live);
    let mut load = [0u32; MAX_VERTICES];
    for &t in live {
        for &v in &tris[t as usize].verts {
            load[v] += 1;
        }
    }
    let mut order = live.to_vec();
    order.sort_by_key(|&t| {
        let [a, b, c] = tris[t as usize].verts;
        (load[a] + load[b] + load[c], t)
    });
    let light = pack(&order);
    if light.len() > lex.len() {
        light
    } else {
        lex
    }
}
