//! Single-colour triangle tilings of near-complete graphs.
//!
//! The search keeps disjoint *blocks* (five vertices spanning a complete
//! graph that contains a bowtie) and *triangles* (monochromatic, all of one
//! colour). Every block holds a triangle of either colour, so `|blocks| +
//! |triangles|` disjoint triangles of the common colour exist at any time.
//! Each round performs one augmentation that raises `(|blocks|,
//! |triangles|)` lexicographically, until the sum reaches `⌊(δ+1)/5⌋`:
//!
//! 1. a free monochromatic triangle of the right colour becomes a triangle;
//! 2. a free triangle of the other colour completing a `K_6` with a kept
//!    triangle yields a bowtie, and the pair becomes a block;
//! 3. a free `K_5` completing a `K_8` with a kept triangle yields either a
//!    bowtie or two disjoint triangles of the kept colour;
//! 4. otherwise blocks are rotated: for the smallest free edge `uv`, a block
//!    fully joined to `uv`, the kept triangle and the banked vertices spans a
//!    `K_7` with `u, v`, which holds a bowtie on another vertex set; that
//!    bowtie replaces the block and a released vertex is banked. With at
//!    least five banked vertices (plus possibly one more free vertex joined
//!    to them) steps 3, a `K_6`, or a `K_10` finish the round.

use crate::error::{Error, Result};
use crate::graph::{find_clique, Bowtie, Colour, ColouredGraph, MonoClique, Tiling, VertexSet};

use super::small::{
    bowtie_through_vertex_k6, extract_mono_triangle_k6, extract_two_disjoint_k8, second_bowtie_k7,
    two_disjoint_same_colour_k10,
};

const STEP: &str = "bes_large";

/// Counters describing one run.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BesLargeTrace {
    /// Target `⌊(δ+1)/5⌋`.
    pub m: usize,
    /// `(|blocks|, |triangles|)` after each round.
    pub potentials: Vec<(usize, usize)>,
    /// Block rotations performed.
    pub rotations: usize,
    /// The run ended through the ten-vertex case.
    pub ten_vertex_finish: bool,
}

/// At least `⌊(δ+1)/5⌋` disjoint triangles of one colour when
/// `δ >= 65n/66`.
pub fn bes_large(g: &ColouredGraph) -> Result<Tiling> {
    bes_large_traced(g).map(|(t, _)| t)
}

pub fn bes_large_traced(g: &ColouredGraph) -> Result<(Tiling, BesLargeTrace)> {
    if g.r() != 2 {
        return Err(Error::Unsupported(format!("two colours required, got r = {}", g.r())));
    }
    let (n, delta) = (g.n(), g.min_degree());
    if 66 * delta < 65 * n || n == 0 {
        return Err(Error::Precondition(format!("need delta >= 65n/66, got n={n}, delta={delta}")));
    }
    let m = (delta + 1) / 5;
    let mut state = State {
        g,
        blocks: Vec::new(),
        tris: Vec::new(),
        colour: None,
        m,
    };
    let mut trace = BesLargeTrace {
        m,
        ..BesLargeTrace::default()
    };
    while state.blocks.len() + state.tris.len() < m {
        if trace.potentials.len() >= m * (m + 1) {
            return Err(Error::anomaly(STEP, format!("more than {} rounds", m * (m + 1)), g));
        }
        let before = state.potential();
        match state.augment(&mut trace)? {
            Round::Grew => {}
            Round::Finished(tiling) => {
                trace.ten_vertex_finish = true;
                return check(g, tiling, m).map(|t| (t, trace));
            }
        }
        let after = state.potential();
        if after <= before {
            return Err(Error::anomaly(STEP, format!("potential {before:?} did not grow"), g));
        }
        trace.potentials.push(after);
    }
    let tiling = state.select();
    check(g, tiling, m).map(|t| (t, trace))
}

fn check(g: &ColouredGraph, mut tiling: Tiling, m: usize) -> Result<Tiling> {
    tiling.sort();
    tiling
        .verify_triangles(g, true)
        .map_err(|e| Error::anomaly(STEP, format!("invalid output: {e}"), g))?;
    if tiling.size() < m {
        return Err(Error::anomaly(STEP, format!("{} < {m} triangles", tiling.size()), g));
    }
    Ok(tiling)
}

struct Block {
    set: VertexSet,
    bowtie: Bowtie,
}

impl Block {
    fn new(bowtie: Bowtie) -> Self {
        Block {
            set: bowtie.vertex_set(),
            bowtie,
        }
    }
}

enum Round {
    Grew,
    Finished(Tiling),
}

struct State<'a> {
    g: &'a ColouredGraph,
    blocks: Vec<Block>,
    tris: Vec<MonoClique>,
    colour: Option<Colour>,
    m: usize,
}

impl State<'_> {
    fn potential(&self) -> (usize, usize) {
        (self.blocks.len(), self.tris.len())
    }

    fn used(&self) -> VertexSet {
        let b = self.blocks.iter().fold(VertexSet::empty(), |acc, b| acc | b.set);
        self.tris.iter().fold(b, |acc, t| acc | t.vertex_set())
    }

    fn joined_to_all(&self, set: VertexSet, to: VertexSet) -> bool {
        to.iter().all(|s| set.is_subset(&self.g.neighbours(s)))
    }

    fn push_triangle(&mut self, t: MonoClique) {
        self.colour.get_or_insert(t.colour);
        self.tris.push(t);
    }

    fn augment(&mut self, trace: &mut BesLargeTrace) -> Result<Round> {
        let g = self.g;
        let free = g.vertices() - self.used();
        let free_tris = g.mono_triangles_within(free);

        let Some(c) = self.colour.filter(|_| !self.tris.is_empty()) else {
            if let Some(t) = free_tris.into_iter().next() {
                self.colour = None;
                self.push_triangle(t);
                return Ok(Round::Grew);
            }
            return self.rotate_and_finish(trace);
        };

        if let Some(t) = free_tris.iter().find(|t| t.colour == c) {
            self.push_triangle(t.clone());
            return Ok(Round::Grew);
        }
        for k in &free_tris {
            for i in 0..self.tris.len() {
                let ti = &self.tris[i];
                if self.joined_to_all(k.vertex_set(), ti.vertex_set()) {
                    let mut six = ti.vertices.clone();
                    six.extend_from_slice(&k.vertices);
                    six.sort_unstable();
                    let bowtie = bowtie_through_vertex_k6(g, &six, ti.vertices[0])?;
                    self.tris.remove(i);
                    self.blocks.push(Block::new(bowtie));
                    return Ok(Round::Grew);
                }
            }
        }
        for i in 0..self.tris.len() {
            let common = self.tris[i]
                .vertices
                .iter()
                .fold(free, |acc, &v| acc & g.neighbours(v));
            if let Some(k5) = find_clique(g.adjacency(), common, 5) {
                return self.absorb_k8(i, &k5);
            }
        }
        self.rotate_and_finish(trace)
    }

    /// Triangle `i` plus five free vertices spanning a `K_8` with it: a
    /// triangle of the other colour gives a bowtie, otherwise the `K_8` holds
    /// two disjoint triangles of the kept colour.
    fn absorb_k8(&mut self, i: usize, extra: &[usize]) -> Result<Round> {
        let g = self.g;
        let ti = self.tris[i].clone();
        let mut eight = ti.vertices.clone();
        eight.extend_from_slice(extra);
        eight.sort_unstable();
        if !g.is_clique(&eight) {
            return Err(Error::anomaly(STEP, format!("{eight:?} is not a K8"), g));
        }
        let tris = g.mono_triangles_within(eight.iter().collect());
        if let Some(k) = tris.iter().find(|t| t.colour != ti.colour) {
            let shared = (k.vertex_set() & ti.vertex_set()).len();
            let bowtie = match shared {
                1 => Bowtie {
                    t1: ti.clone(),
                    t2: k.clone(),
                },
                0 => {
                    let mut six = ti.vertices.clone();
                    six.extend_from_slice(&k.vertices);
                    six.sort_unstable();
                    bowtie_through_vertex_k6(g, &six, ti.vertices[0])?
                }
                _ => return Err(Error::anomaly(STEP, "triangles of different colours share an edge", g)),
            };
            self.tris.remove(i);
            self.blocks.push(Block::new(bowtie));
        } else {
            let (a, b) = extract_two_disjoint_k8(g, &eight)?;
            self.tris.remove(i);
            self.tris.push(a);
            self.tris.push(b);
        }
        Ok(Round::Grew)
    }

    /// First block joined to every vertex of `to`.
    fn joined_block(&self, to: VertexSet, what: &str) -> Result<usize> {
        self.blocks
            .iter()
            .position(|b| self.joined_to_all(b.set, to))
            .ok_or_else(|| Error::anomaly(STEP, format!("no block joined to {what} {to:?}"), self.g))
    }

    fn rotate_and_finish(&mut self, trace: &mut BesLargeTrace) -> Result<Round> {
        let g = self.g;
        let t0 = self.tris.first().map(|t| t.vertex_set()).unwrap_or_default();
        let mut banked = VertexSet::empty();
        while banked.len() <= 5 {
            let outside = g.vertices() - self.used() - banked;
            let Some((u, v)) = outside
                .iter()
                .find_map(|u| (g.neighbours(u) & outside).iter().find(|&v| v > u).map(|v| (u, v)))
            else {
                break;
            };
            let mut s = t0 | banked;
            s.insert(u);
            s.insert(v);
            let bi = self.joined_block(s, "rotation set")?;
            let mut seven = self.blocks[bi].set;
            seven.insert(u);
            seven.insert(v);
            let next = second_bowtie_k7(g, &seven.to_vec(), &self.blocks[bi].bowtie)?;
            let released = (self.blocks[bi].set - next.vertex_set())
                .first()
                .ok_or_else(|| Error::anomaly(STEP, "rotated block kept its vertex set", g))?;
            self.blocks[bi] = Block::new(next);
            banked.insert(released);
            trace.rotations += 1;
        }

        let mut y = banked;
        if banked.len() <= 5 {
            let outside = g.vertices() - self.used() - banked;
            let base = t0 | banked;
            if let Some(w) = outside.iter().find(|&w| base.is_subset(&g.neighbours(w))) {
                y.insert(w);
            }
        }
        if !g.is_clique(&(t0 | y).to_vec()) {
            return Err(Error::anomaly(STEP, "kept triangle and banked vertices do not span a clique", g));
        }

        if !self.tris.is_empty() {
            if y.len() < 5 {
                return Err(Error::anomaly(STEP, format!("only {} banked vertices", y.len()), g));
            }
            let five: Vec<usize> = y.iter().take(5).collect();
            return self.absorb_k8(0, &five);
        }
        match y.len() {
            6 => {
                let t = extract_mono_triangle_k6(g, &y.to_vec())?;
                self.colour = None;
                self.push_triangle(t);
                Ok(Round::Grew)
            }
            5 if self.blocks.len() + 1 == self.m => {
                let bi = self.joined_block(y, "banked set")?;
                let ten = (self.blocks[bi].set | y).to_vec();
                let (a, b) = two_disjoint_same_colour_k10(g, &ten)?;
                let c = a.colour;
                let mut out: Vec<MonoClique> = self
                    .blocks
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != bi)
                    .map(|(_, blk)| blk.bowtie.triangle_of(c).expect("bowtie has both colours").clone())
                    .collect();
                out.push(a);
                out.push(b);
                Ok(Round::Finished(Tiling::new(out)))
            }
            k => Err(Error::anomaly(
                STEP,
                format!("{k} banked vertices with {} blocks and no triangles", self.blocks.len()),
                g,
            )),
        }
    }

    fn select(&self) -> Tiling {
        let c = self.colour.unwrap_or(Colour::RED);
        let mut out: Vec<MonoClique> = self
            .blocks
            .iter()
            .map(|b| b.bowtie.triangle_of(c).expect("bowtie has both colours").clone())
            .collect();
        out.extend(self.tris.iter().cloned());
        Tiling::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::badly_coloured_k5;

    /// Blocks `5j..5j+5` for `j < blocks`, each with red `a,a+1,a+2` and blue
    /// `a+2,a+3,a+4`; the five vertices after the blocks (and after an
    /// optional red triangle) form a badly coloured `K_5`; every other edge
    /// is blue.
    fn seeded(blocks: usize, with_triangle: bool) -> (ColouredGraph, Vec<Block>, Vec<MonoClique>) {
        let k5 = badly_coloured_k5();
        let tri_start = 5 * blocks;
        let free_start = tri_start + if with_triangle { 3 } else { 0 };
        let n = free_start + 5;
        let g = ColouredGraph::complete_with(n, 2, |u, v| {
            if u >= free_start {
                return k5.colour(u - free_start, v - free_start).unwrap();
            }
            if with_triangle && u >= tri_start && v < free_start {
                return Colour::RED;
            }
            if u / 5 == v / 5 && v < tri_start {
                let (a, b) = (u % 5, v % 5);
                return if a >= 2 && b >= 2 { Colour::BLUE } else { Colour::RED };
            }
            Colour::BLUE
        })
        .unwrap();
        let blocks = (0..blocks)
            .map(|j| {
                let a = 5 * j;
                Block::new(Bowtie {
                    t1: MonoClique::new(&g, vec![a, a + 1, a + 2]).unwrap(),
                    t2: MonoClique::new(&g, vec![a + 2, a + 3, a + 4]).unwrap(),
                })
            })
            .collect();
        let tris = if with_triangle {
            vec![MonoClique::new(&g, vec![tri_start, tri_start + 1, tri_start + 2]).unwrap()]
        } else {
            Vec::new()
        };
        (g, blocks, tris)
    }

    #[test]
    fn rotation_into_ten_vertex_finish() {
        let (g, blocks, tris) = seeded(13, false);
        assert_eq!(g.n(), 70);
        let mut state = State {
            g: &g,
            blocks,
            tris,
            colour: None,
            m: 14,
        };
        let mut trace = BesLargeTrace::default();
        let Round::Finished(tiling) = state.augment(&mut trace).unwrap() else {
            panic!("expected the ten-vertex finish");
        };
        assert_eq!(trace.rotations, 4);
        let tiling = check(&g, tiling, 14).unwrap();
        assert_eq!(tiling.size(), 14);
    }

    #[test]
    fn rotation_with_kept_triangle() {
        let (g, blocks, tris) = seeded(12, true);
        let mut state = State {
            g: &g,
            blocks,
            tris,
            colour: Some(Colour::RED),
            m: 14,
        };
        let mut trace = BesLargeTrace::default();
        let before = state.potential();
        assert!(matches!(state.rotate_and_finish(&mut trace).unwrap(), Round::Grew));
        assert!(state.potential() > before);
        assert_eq!(trace.rotations, 4);
        for b in &state.blocks {
            b.bowtie.verify(&g).unwrap();
        }
        let tiling = check(&g, state.select(), 13).unwrap();
        assert!(tiling.size() >= 13);
    }
}
