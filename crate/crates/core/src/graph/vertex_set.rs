use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

use serde::{Deserialize, Serialize};

const WORDS: usize = 4;

/// Largest vertex count any graph in this crate may have.
pub const MAX_VERTICES: usize = WORDS * 64;

/// Fixed-capacity bitset over vertices `0..MAX_VERTICES`.
///
/// Neighbourhood intersections and clique extension are word-parallel, which
/// is what the packing bounds and the clique-tiling search lean on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet([0; WORDS])
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        VertexSet(words)
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && (self.0[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & b == 0)
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            idx: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    idx: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.idx < WORDS {
            let w = self.words[self.idx];
            if w != 0 {
                self.words[self.idx] = w & (w - 1);
                return Some(self.idx * 64 + w.trailing_zeros() as usize);
            }
            self.idx += 1;
        }
        None
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(mut self, rhs: VertexSet) -> VertexSet {
        self &= rhs;
        self
    }
}

impl BitAndAssign for VertexSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= b;
        }
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(mut self, rhs: VertexSet) -> VertexSet {
        self |= rhs;
        self
    }
}

impl BitOrAssign for VertexSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a |= b;
        }
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(mut self, rhs: VertexSet) -> VertexSet {
        self -= rhs;
        self
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= !b;
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} exceeds {MAX_VERTICES}"
            )));
        }
        Ok(v.into_iter().collect())
    }
}
