//! Edge-coloured simple graphs and the basic queries every other module
//! builds on.
//!
//! Vertices are `0..n`. An edge carries exactly one colour in `0..r`; a pair
//! without an entry is a non-edge, so non-complete hosts need no sentinel
//! colour. Adjacency is kept both as a colour matrix and as one bitset per
//! vertex and per colour, so neighbourhood intersections are word-parallel.

mod cliques;
mod io;
mod tiling;
mod vertex_set;

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cliques::{find_clique, for_each_clique};
pub use io::{read_graph, write_graph, GraphJson};
pub use tiling::{Bowtie, CliquePacking, MonoClique, Tiling};
pub use vertex_set::{VertexSet, MAX_VERTICES};

/// Largest supported number of colours.
pub const MAX_COLOURS: usize = 8;

const NO_EDGE: u8 = u8::MAX;

/// An edge colour. For two-coloured inputs `0` is red and `1` is blue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colour(pub u8);

impl Colour {
    pub const RED: Colour = Colour(0);
    pub const BLUE: Colour = Colour(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The other colour of a two-colouring.
    pub fn flip(self) -> Colour {
        Colour(1 - self.0.min(1))
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("red"),
            1 => f.write_str("blue"),
            c => write!(f, "c{c}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    n: usize,
    r: u8,
    matrix: Vec<u8>,
    adj: Vec<VertexSet>,
    colour_adj: Vec<VertexSet>,
}

impl ColouredGraph {
    /// Edgeless graph on `n` vertices with `r` available colours.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        if r == 0 || r > MAX_COLOURS {
            return Err(Error::InvalidGraph(format!(
                "colour count {r} outside 1..={MAX_COLOURS}"
            )));
        }
        Ok(ColouredGraph {
            n,
            r: r as u8,
            matrix: vec![NO_EDGE; n * n],
            adj: vec![VertexSet::empty(); n],
            colour_adj: vec![VertexSet::empty(); n * r],
        })
    }

    pub fn from_edges<I>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Colour)>,
    {
        let mut g = Self::new(n, r)?;
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    /// Complete graph whose edge colours are given by `colour(u, v)` for `u < v`.
    pub fn complete_with(n: usize, r: usize, mut colour: impl FnMut(usize, usize) -> Colour) -> Result<Self> {
        let mut g = Self::new(n, r)?;
        for u in 0..n {
            for v in u + 1..n {
                let c = colour(u, v);
                g.add_edge(u, v, c)?;
            }
        }
        Ok(g)
    }

    /// Complete two-coloured graph from a colouring code: bit `i` is the colour
    /// of the `i`-th pair in lexicographic order `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn complete_from_code(n: usize, code: u128) -> Self {
        let mut i = 0;
        Self::complete_with(n, 2, |_, _| {
            let c = Colour(((code >> i) & 1) as u8);
            i += 1;
            c
        })
        .expect("n within bounds")
    }

    /// Inserts an edge. Re-inserting with the same colour is a no-op; a
    /// conflicting colour is an error.
    pub fn add_edge(&mut self, u: usize, v: usize, c: Colour) -> Result<()> {
        self.check_pair(u, v)?;
        if c.index() >= self.r as usize {
            return Err(Error::InvalidGraph(format!(
                "colour {} on edge ({u},{v}) but only {} colours",
                c.0, self.r
            )));
        }
        match self.colour(u, v) {
            Some(old) if old == c => Ok(()),
            Some(old) => Err(Error::InvalidGraph(format!(
                "edge ({u},{v}) given colours {} and {}",
                old.0, c.0
            ))),
            None => {
                self.set_edge(u, v, Some(c));
                Ok(())
            }
        }
    }

    /// Sets, recolours or (with `None`) deletes the edge `uv`.
    pub fn set_edge(&mut self, u: usize, v: usize, c: Option<Colour>) {
        assert!(u != v && u < self.n && v < self.n, "bad pair ({u},{v})");
        if let Some(old) = self.colour(u, v) {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
            let n = self.n;
            self.colour_adj[old.index() * n + u].remove(v);
            self.colour_adj[old.index() * n + v].remove(u);
        }
        let n = self.n;
        match c {
            Some(c) => {
                assert!(c.index() < self.r as usize);
                self.matrix[u * n + v] = c.0;
                self.matrix[v * n + u] = c.0;
                self.adj[u].insert(v);
                self.adj[v].insert(u);
                self.colour_adj[c.index() * n + u].insert(v);
                self.colour_adj[c.index() * n + v].insert(u);
            }
            None => {
                self.matrix[u * n + v] = NO_EDGE;
                self.matrix[v * n + u] = NO_EDGE;
            }
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "pair ({u},{v}) out of range for n = {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        match self.matrix[u * self.n + v] {
            NO_EDGE => None,
            c => Some(Colour(c)),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v] != NO_EDGE
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn colour_neighbours(&self, v: usize, c: Colour) -> VertexSet {
        self.colour_adj[c.index() * self.n + v]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Minimum degree over all colours; `0` for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Minimum degree of the subgraph induced on `within`.
    pub fn min_degree_within(&self, within: VertexSet) -> usize {
        within
            .iter()
            .map(|v| (self.adj[v] & within).len())
            .min()
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// All edges as `(u, v, colour)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.colour(u, v).map(|c| (u, v, c)))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Common colour of every pair in `verts`, if all pairs are edges of one colour.
    pub fn mono_colour(&self, verts: &[usize]) -> Option<Colour> {
        let c = self.colour(*verts.first()?, *verts.get(1)?)?;
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if u == v || self.colour(u, v) != Some(c) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Monochromatic triangles in canonical (lexicographic) order.
    pub fn mono_triangles(&self) -> Vec<MonoClique> {
        self.mono_triangles_within(self.vertices())
    }

    /// Monochromatic triangles with all three vertices in `within`.
    pub fn mono_triangles_within(&self, within: VertexSet) -> Vec<MonoClique> {
        let mut out = Vec::new();
        for a in within.iter() {
            for col in 0..self.r {
                let c = Colour(col);
                let na = self.colour_neighbours(a, c) & within;
                for b in na.iter().filter(|&b| b > a) {
                    let nab = na & self.colour_neighbours(b, c);
                    for x in nab.iter().filter(|&x| x > b) {
                        out.push(MonoClique::new_unchecked(vec![a, b, x], c));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Monochromatic triangles of colour `c` only.
    pub fn mono_triangles_of(&self, c: Colour) -> Vec<MonoClique> {
        let mut out: Vec<_> = self
            .mono_triangles()
            .into_iter()
            .filter(|t| t.colour == c)
            .collect();
        out.sort();
        out
    }

    /// Subgraph induced on `verts`, relabelled `verts[i] -> i`.
    pub fn induced(&self, verts: &[usize]) -> ColouredGraph {
        let mut g = ColouredGraph::new(verts.len(), self.r()).expect("subgraph of a valid graph");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if let Some(c) = self.colour(u, v) {
                    g.set_edge(i, j, Some(c));
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> ColouredGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = ColouredGraph::new(self.n, self.r()).expect("same size");
        for (u, v, c) in self.edges() {
            g.set_edge(perm[u], perm[v], Some(c));
        }
        g
    }

    /// Renames colour `c` as `perm[c]`.
    pub fn permute_colours(&self, perm: &[u8]) -> ColouredGraph {
        assert_eq!(perm.len(), self.r());
        let mut g = ColouredGraph::new(self.n, self.r()).expect("same size");
        for (u, v, c) in self.edges() {
            g.set_edge(u, v, Some(Colour(perm[c.index()])));
        }
        g
    }

    /// Blow-up: vertex `v` becomes an independent class of `sizes[v]`
    /// vertices, and every edge `xy` becomes a complete bipartite graph between
    /// the classes of `x` and `y` in the colour of `xy`. Returns the graph and
    /// the vertex range of each class.
    pub fn blow_up(&self, sizes: &[usize]) -> Result<(ColouredGraph, Vec<Range<usize>>)> {
        if sizes.len() != self.n {
            return Err(Error::Inadmissible(format!(
                "{} class sizes for a {}-vertex graph",
                sizes.len(),
                self.n
            )));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Inadmissible(format!("class {i} has size 0")));
        }
        let total: usize = sizes.iter().sum();
        let mut g = ColouredGraph::new(total, self.r())?;
        let mut classes = Vec::with_capacity(self.n);
        let mut start = 0;
        for &s in sizes {
            classes.push(start..start + s);
            start += s;
        }
        for (x, y, c) in self.edges() {
            for a in classes[x].clone() {
                for b in classes[y].clone() {
                    g.set_edge(a, b, Some(c));
                }
            }
        }
        Ok((g, classes))
    }
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredGraph(n={}, r={}, edges=[", self.n, self.r)?;
        for (i, (u, v, c)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}:{}", c.0)?;
        }
        f.write_str("])")
    }
}
