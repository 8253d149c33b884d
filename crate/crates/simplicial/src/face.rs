//! Faces as fixed-width vertex sets.
//!
//! A face is a set of vertex ids stored in one `u64`, bit `v` meaning vertex
//! `v` is present. This caps the universe at ids `0..=63`, which covers every
//! instance this library targets; constructors fail loudly beyond that bound.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Vertex label. Ids are arbitrary distinct values in `0..=63`; nothing
/// assumes contiguity.
pub type Vertex = u32;

/// Largest supported vertex id.
pub const MAX_VERTEX: Vertex = 63;

/// A face: a finite set of vertices. The empty face (dimension -1) is a
/// valid value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex ids. Duplicates collapse silently.
    pub fn new(vertices: &[Vertex]) -> Result<Face> {
        let mut mask = 0u64;
        for &v in vertices {
            if v > MAX_VERTEX {
                return Err(Error::VertexOutOfRange(v as u64));
            }
            mask |= 1 << v;
        }
        Ok(Face(mask))
    }

    pub fn singleton(v: Vertex) -> Result<Face> {
        Face::new(&[v])
    }

    /// Every `u64` is a valid face (bits are ids `0..=63`).
    pub const fn from_mask(mask: u64) -> Face {
        Face(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|E| - 1`; the empty face has dimension -1.
    pub const fn dimension(self) -> i32 {
        self.0.count_ones() as i32 - 1
    }

    pub const fn contains(self, v: Vertex) -> bool {
        v <= MAX_VERTEX && self.0 & (1 << v) != 0
    }

    pub const fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub const fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub const fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub const fn insert(self, v: Vertex) -> Face {
        Face(self.0 | 1 << v)
    }

    pub const fn remove(self, v: Vertex) -> Face {
        Face(self.0 & !(1 << v))
    }

    pub fn min_vertex(self) -> Option<Vertex> {
        (!self.is_empty()).then(|| self.0.trailing_zeros())
    }

    pub fn max_vertex(self) -> Option<Vertex> {
        (!self.is_empty()).then(|| 63 - self.0.leading_zeros())
    }

    /// Vertices in increasing id order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// All `k`-element subsets, in lexicographic order of their sorted
    /// vertex lists.
    pub fn subsets(self, k: usize) -> Subsets {
        Subsets::new(self, k)
    }
}

impl Ord for Face {
    /// Lexicographic order of the sorted vertex lists, shorter prefixes
    /// first. For faces of equal size this is the facet order used
    /// throughout.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // All bits below `low` agree. Whoever holds `low` continues with a
        // smaller vertex, unless the other side has nothing left at all (a
        // strict prefix, which sorts first).
        if self.0 & low != 0 {
            if other.0 & !(low | (low - 1)) == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & !(low | (low - 1)) == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Iterator over the vertices of a face, ascending.
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Iterator over all `k`-subsets of a face.
pub struct Subsets {
    verts: [u8; 64],
    n: usize,
    k: usize,
    idx: [u8; 64],
    done: bool,
}

impl Subsets {
    fn new(face: Face, k: usize) -> Subsets {
        let mut verts = [0u8; 64];
        let mut n = 0;
        for v in face.vertices() {
            verts[n] = v as u8;
            n += 1;
        }
        let mut idx = [0u8; 64];
        for (i, slot) in idx.iter_mut().enumerate().take(k) {
            *slot = i as u8;
        }
        Subsets { verts, n, k, idx, done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        if self.done {
            return None;
        }
        let mut mask = 0u64;
        for i in 0..self.k {
            mask |= 1 << self.verts[self.idx[i] as usize];
        }
        // Advance to the next index combination in lexicographic order.
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if (self.idx[i] as usize) < self.n - (self.k - i) {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(Face(mask))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(vs: &[Vertex]) -> Face {
        Face::new(vs).unwrap()
    }

    #[test]
    fn build_and_dimension() {
        assert_eq!(f(&[1, 2, 3]).dimension(), 2);
        assert_eq!(f(&[3, 2, 1]).to_vec(), vec![1, 2, 3]);
        assert_eq!(f(&[5, 5]).to_vec(), vec![5]);
        assert_eq!(Face::EMPTY.dimension(), -1);
        assert!(matches!(Face::new(&[64]), Err(Error::VertexOutOfRange(64))));
    }

    #[test]
    fn lexicographic_order_of_sorted_lists() {
        assert!(f(&[1, 4]) < f(&[2, 3]));
        assert!(f(&[1, 2, 3]) < f(&[1, 2, 4]));
        assert!(f(&[1]) < f(&[1, 2]));
        assert!(f(&[1, 2]) < f(&[2]));
        assert_eq!(f(&[2, 4]).cmp(&f(&[2, 4])), Ordering::Equal);

        // Cross-check against Vec comparison on every pair of subsets of
        // a 6-element universe.
        let universe = f(&[0, 1, 2, 3, 5, 7]);
        let mut all = vec![Face::EMPTY];
        for k in 1..=6 {
            all.extend(universe.subsets(k));
        }
        for &a in &all {
            for &b in &all {
                assert_eq!(a.cmp(&b), a.to_vec().cmp(&b.to_vec()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn subsets_lex_order() {
        let tri: Vec<Face> = f(&[1, 2, 3]).subsets(2).collect();
        assert_eq!(tri, vec![f(&[1, 2]), f(&[1, 3]), f(&[2, 3])]);
        assert_eq!(f(&[1, 2, 3]).subsets(0).collect::<Vec<_>>(), vec![Face::EMPTY]);
        assert_eq!(f(&[1, 2]).subsets(3).count(), 0);
        assert_eq!(f(&[1, 3, 4, 7, 9]).subsets(3).count(), 10);
    }
}
