use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Colour, ColouredGraph, VertexSet};
use crate::error::{Error, Result};

/// A clique all of whose edges share one colour. Vertices are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoClique {
    #[serde(rename = "verts")]
    pub vertices: Vec<usize>,
    pub colour: Colour,
}

impl MonoClique {
    /// Builds the clique on `vertices` after checking it is monochromatic in `g`.
    pub fn new(g: &ColouredGraph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() < 2 {
            return Err(Error::InvalidGraph("a clique needs at least two vertices".into()));
        }
        match g.mono_colour(&vertices) {
            Some(colour) => Ok(MonoClique { vertices, colour }),
            None => Err(Error::InvalidGraph(format!(
                "{vertices:?} is not a monochromatic clique"
            ))),
        }
    }

    pub(crate) fn new_unchecked(mut vertices: Vec<usize>, colour: Colour) -> Self {
        vertices.sort_unstable();
        MonoClique { vertices, colour }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().collect()
    }

    pub fn verify(&self, g: &ColouredGraph) -> Result<()> {
        if self.vertices.len() < 2 || self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph(format!(
                "clique vertices {:?} not strictly increasing",
                self.vertices
            )));
        }
        if self.vertices.iter().any(|&v| v >= g.n()) {
            return Err(Error::InvalidGraph(format!("clique {:?} out of range", self.vertices)));
        }
        if g.mono_colour(&self.vertices) != Some(self.colour) {
            return Err(Error::InvalidGraph(format!(
                "{:?} is not a {} clique",
                self.vertices, self.colour
            )));
        }
        Ok(())
    }
}

impl fmt::Display for MonoClique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.colour, self.vertices)
    }
}

/// Pairwise vertex-disjoint monochromatic cliques.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub cliques: Vec<MonoClique>,
}

impl Tiling {
    pub fn new(cliques: Vec<MonoClique>) -> Self {
        Tiling { cliques }
    }

    pub fn size(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// True iff every clique has the same colour (vacuously true when empty).
    pub fn is_single_colour(&self) -> bool {
        self.cliques.windows(2).all(|w| w[0].colour == w[1].colour)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.cliques.iter().fold(VertexSet::empty(), |acc, c| acc | c.vertex_set())
    }

    /// Number of cliques of colour `c`.
    pub fn count_colour(&self, c: Colour) -> usize {
        self.cliques.iter().filter(|k| k.colour == c).count()
    }

    /// Re-checks disjointness and monochromaticity against `g`.
    pub fn verify(&self, g: &ColouredGraph) -> Result<()> {
        let mut seen = VertexSet::empty();
        for k in &self.cliques {
            k.verify(g)?;
            let s = k.vertex_set();
            if !s.is_disjoint(&seen) {
                return Err(Error::InvalidGraph(format!("{k} overlaps an earlier clique")));
            }
            seen |= s;
        }
        Ok(())
    }

    /// As [`Tiling::verify`], additionally requiring every clique to be a
    /// triangle and, if `single_colour`, all of one colour.
    pub fn verify_triangles(&self, g: &ColouredGraph, single_colour: bool) -> Result<()> {
        self.verify(g)?;
        if let Some(k) = self.cliques.iter().find(|k| k.len() != 3) {
            return Err(Error::InvalidGraph(format!("{k} is not a triangle")));
        }
        if single_colour && !self.is_single_colour() {
            return Err(Error::InvalidGraph("tiling mixes colours".into()));
        }
        Ok(())
    }

    pub fn sort(&mut self) {
        self.cliques.sort();
    }
}

/// Two monochromatic triangles of different colours sharing exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bowtie {
    pub t1: MonoClique,
    pub t2: MonoClique,
}

impl Bowtie {
    pub fn vertex_set(&self) -> VertexSet {
        self.t1.vertex_set() | self.t2.vertex_set()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.vertex_set().to_vec()
    }

    /// The shared vertex.
    pub fn centre(&self) -> usize {
        (self.t1.vertex_set() & self.t2.vertex_set())
            .first()
            .expect("bowtie triangles intersect")
    }

    /// The triangle of colour `c`, if either has it.
    pub fn triangle_of(&self, c: Colour) -> Option<&MonoClique> {
        [&self.t1, &self.t2].into_iter().find(|t| t.colour == c)
    }

    pub fn verify(&self, g: &ColouredGraph) -> Result<()> {
        self.t1.verify(g)?;
        self.t2.verify(g)?;
        if self.t1.len() != 3 || self.t2.len() != 3 {
            return Err(Error::InvalidGraph("bowtie parts must be triangles".into()));
        }
        if self.t1.colour == self.t2.colour {
            return Err(Error::InvalidGraph("bowtie triangles share a colour".into()));
        }
        if (self.t1.vertex_set() & self.t2.vertex_set()).len() != 1 {
            return Err(Error::InvalidGraph("bowtie triangles must share exactly one vertex".into()));
        }
        Ok(())
    }
}

/// Vertex-disjoint cliques with no colour requirement.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePacking {
    pub cliques: Vec<Vec<usize>>,
}

impl CliquePacking {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn verify(&self, adjacency: &[VertexSet]) -> Result<()> {
        let mut seen = VertexSet::empty();
        for k in &self.cliques {
            for (i, &u) in k.iter().enumerate() {
                if u >= adjacency.len() || seen.contains(u) {
                    return Err(Error::InvalidGraph(format!("clique {k:?} reuses or misses vertex {u}")));
                }
                seen.insert(u);
                if k[i + 1..].iter().any(|&v| !adjacency[u].contains(v)) {
                    return Err(Error::InvalidGraph(format!("{k:?} is not a clique")));
                }
            }
        }
        Ok(())
    }
}
