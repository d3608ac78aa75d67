//! Colouring codes and the range-partitioned enumeration engine.
//!
//! A colouring of a skeleton with `E` edges is the integer whose base-`r`
//! digit `i` is the colour of edge `i`. Edges of `K_n` are ordered
//! lexicographically: `(0,1), (0,2), ..., (n-2,n-1)`.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph};
use crate::proof::k7x2_pairs;

/// Largest universe the exhaustive engine will walk.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 40;

/// Witnesses kept per scan; further violations are only counted.
pub const MAX_WITNESSES: usize = 16;

const CHUNK: u128 = 1 << 14;

/// A vertex count and an ordered edge list; colourings assign a colour to
/// every listed edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Skeleton { n, pairs }
    }

    /// `K_7(2)` in the labelling of [`k7x2_pairs`].
    pub fn k7x2() -> Self {
        Skeleton {
            n: 14,
            pairs: k7x2_pairs(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    /// `r^E`, or `None` if it does not fit in 128 bits.
    pub fn universe(&self, r: usize) -> Option<u128> {
        (r as u128).checked_pow(self.pairs.len() as u32)
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.pairs.iter().position(|&p| p == key)
    }

    /// Decodes a base-`r` colouring code.
    pub fn graph(&self, code: u128, r: usize) -> ColouredGraph {
        let mut rest = code;
        let edges = self.pairs.iter().map(|&(u, v)| {
            let c = (rest % r as u128) as u8;
            rest /= r as u128;
            (u, v, Colour(c))
        });
        ColouredGraph::from_edges(self.n, r, edges).expect("skeleton edges are valid")
    }

    /// Inverse of [`Skeleton::graph`]; `None` if some skeleton edge is
    /// missing.
    pub fn code(&self, g: &ColouredGraph) -> Option<u128> {
        let r = g.r() as u128;
        let mut code = 0u128;
        for &(u, v) in self.pairs.iter().rev() {
            code = code.checked_mul(r)? + g.colour(u, v)?.index() as u128;
        }
        Some(code)
    }
}

/// What a visitor reports about one colouring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Visit {
    /// The colouring satisfies the lemma's hypothesis.
    pub qualifying: bool,
    pub violated: bool,
    /// `Some(ok)` when a constructive extractor was run on it.
    pub extractor: Option<bool>,
}

impl Visit {
    pub fn check(violated: bool) -> Self {
        Visit {
            qualifying: true,
            violated,
            extractor: None,
        }
    }

    pub fn skip() -> Self {
        Visit::default()
    }
}

/// Merged result of a scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scan {
    pub checked: u64,
    pub qualifying: u64,
    pub violations: u64,
    /// First violating codes in increasing order.
    pub witnesses: Vec<u128>,
    pub extractor_runs: u64,
    pub extractor_failures: u64,
    /// First codes on which the extractor failed.
    pub extractor_witnesses: Vec<u128>,
}

impl Scan {
    pub(crate) fn record(&mut self, code: u128, v: Visit) {
        self.checked += 1;
        self.qualifying += v.qualifying as u64;
        if v.violated {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(code);
            }
        }
        if let Some(ok) = v.extractor {
            self.extractor_runs += 1;
            if !ok {
                self.extractor_failures += 1;
                if self.extractor_witnesses.len() < MAX_WITNESSES {
                    self.extractor_witnesses.push(code);
                }
            }
        }
    }

    /// Appends `other`, which must cover later codes.
    pub fn merge(&mut self, other: Scan) {
        self.checked += other.checked;
        self.qualifying += other.qualifying;
        self.violations += other.violations;
        self.extractor_runs += other.extractor_runs;
        self.extractor_failures += other.extractor_failures;
        let room = MAX_WITNESSES - self.witnesses.len();
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        let room = MAX_WITNESSES - self.extractor_witnesses.len();
        self.extractor_witnesses
            .extend(other.extractor_witnesses.into_iter().take(room));
    }
}

/// Runs `f` on a pool of `workers` threads (`0` keeps the current pool).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Visits every colouring index in `range` of the universe of `r`-colourings
/// of `edges` edges.
///
/// With `halve` (two colours only) edge 0 is fixed to colour 0: index `i`
/// stands for code `2i`, the reduced universe has `2^(E-1)` members and each
/// represents itself and its colour swap. Chunks are scanned in parallel and
/// merged in index order, so results do not depend on `workers`.
pub fn enumerate_colourings<F>(
    r: usize,
    edges: usize,
    range: Range<u128>,
    halve: bool,
    workers: usize,
    visit: F,
) -> Result<Scan>
where
    F: Fn(u128) -> Visit + Sync,
{
    if halve && r != 2 {
        return Err(Error::Unsupported("colour-swap halving needs two colours".into()));
    }
    let full = (r as u128)
        .checked_pow(edges as u32)
        .filter(|&u| u <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("{r}^{edges} colourings exceed the exhaustive limit")))?;
    let size = if halve { full / 2 } else { full };
    if range.start > range.end || range.end > size {
        return Err(Error::Inadmissible(format!(
            "range {}..{} outside the universe of {size}",
            range.start, range.end
        )));
    }
    let chunks = (range.end - range.start).div_ceil(CHUNK) as u64;
    let scans: Vec<Scan> = with_workers(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = range.start + c as u128 * CHUNK;
                let hi = (lo + CHUNK).min(range.end);
                let mut scan = Scan::default();
                for i in lo..hi {
                    let code = if halve { i << 1 } else { i };
                    scan.record(code, visit(code));
                }
                scan
            })
            .collect()
    })?;
    let mut total = Scan::default();
    for s in scans {
        total.merge(s);
    }
    Ok(total)
}

/// Bit tables for monochromatic triangles of two-coloured `K_n`, `n <= 8`.
///
/// Triangle `i` is bit `i` of the returned masks; relation tables give, for
/// each triangle, the triangles disjoint from it, sharing at most one
/// vertex, and sharing exactly one vertex.
pub(crate) struct TriangleTable {
    pub edge_masks: Vec<u64>,
    pub verts: Vec<u16>,
    pub disjoint: Vec<u64>,
    pub share_le1: Vec<u64>,
    pub share1: Vec<u64>,
}

impl TriangleTable {
    pub fn new(n: usize) -> Self {
        assert!(n <= 8, "at most 56 triangles fit the masks");
        let sk = Skeleton::complete(n);
        let idx = |u, v| sk.index_of(u, v).expect("complete");
        let mut edge_masks = Vec::new();
        let mut verts = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    edge_masks.push((1u64 << idx(a, b)) | (1 << idx(a, c)) | (1 << idx(b, c)));
                    verts.push((1u16 << a) | (1 << b) | (1 << c));
                }
            }
        }
        let rel = |keep: &dyn Fn(u32) -> bool| -> Vec<u64> {
            verts
                .iter()
                .enumerate()
                .map(|(i, &vi)| {
                    verts
                        .iter()
                        .enumerate()
                        .filter(|&(j, &vj)| j != i && keep((vi & vj).count_ones()))
                        .fold(0u64, |m, (j, _)| m | 1 << j)
                })
                .collect()
        };
        TriangleTable {
            disjoint: rel(&|s| s == 0),
            share_le1: rel(&|s| s <= 1),
            share1: rel(&|s| s == 1),
            edge_masks,
            verts,
        }
    }

    /// `(colour 0, colour 1)` monochromatic triangle masks of a code.
    #[inline]
    pub fn mono(&self, code: u64) -> (u64, u64) {
        let (mut zero, mut one) = (0u64, 0u64);
        for (i, &m) in self.edge_masks.iter().enumerate() {
            let hit = code & m;
            if hit == 0 {
                zero |= 1 << i;
            } else if hit == m {
                one |= 1 << i;
            }
        }
        (zero, one)
    }

    /// Some `i` in `a` and `j` in `b` related by `rel`.
    #[inline]
    pub fn any_pair(&self, a: u64, b: u64, rel: &[u64]) -> bool {
        bits(a).any(|i| b & rel[i] != 0)
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        let sk = Skeleton::complete(5);
        for code in [0u128, 1, 0b1010_1100_11, (1 << 10) - 1] {
            let g = sk.graph(code, 2);
            assert_eq!(sk.code(&g), Some(code));
        }
        let g = sk.graph(5, 3);
        assert_eq!(g.colour(0, 1), Some(Colour(2)));
        assert_eq!(g.colour(0, 2), Some(Colour(1)));
        assert_eq!(sk.code(&g), Some(5));
        assert_eq!(Skeleton::k7x2().edge_count(), 84);
    }

    #[test]
    fn universe_sizes_and_halving() {
        let all = enumerate_colourings(2, 15, 0..1 << 15, false, 1, |_| Visit::check(false)).unwrap();
        assert_eq!(all.checked, 32768);
        let half = enumerate_colourings(2, 21, 0..1 << 20, true, 1, |c| Visit::check(c & 1 == 1)).unwrap();
        assert_eq!(half.checked * 2, 1 << 21);
        assert_eq!(half.violations, 0);
        assert!(enumerate_colourings(2, 21, 0..1 << 21, true, 1, |_| Visit::skip()).is_err());
        assert!(enumerate_colourings(2, 60, 0..1, false, 1, |_| Visit::skip()).is_err());
    }

    #[test]
    fn witnesses_are_first_in_order() {
        let scan = enumerate_colourings(2, 18, 0..1 << 18, false, 2, |c| Visit::check(c % 1000 == 7)).unwrap();
        assert_eq!(scan.violations, (1u64 << 18).div_ceil(1000));
        assert_eq!(scan.witnesses.len(), MAX_WITNESSES);
        assert_eq!(scan.witnesses[..3], [7, 1007, 2007]);
    }

    #[test]
    fn triangle_table_matches_graph() {
        let t = TriangleTable::new(6);
        assert_eq!(t.edge_masks.len(), 20);
        let sk = Skeleton::complete(6);
        for code in [0u64, 12345, 32767, 0b101010101010101] {
            let (z, o) = t.mono(code);
            let g = sk.graph(code as u128, 2);
            assert_eq!((z | o).count_ones() as usize, g.mono_triangles().len());
        }
        assert_eq!(t.disjoint[0].count_ones(), 1);
        assert_eq!(t.share1[0].count_ones(), 9);
    }
}
