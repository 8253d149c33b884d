//! Simplicial complexes given by their facets.
//!
//! A [`Complex`] stores the maximal faces only; every subset of a facet is
//! implicitly a face. Construction normalizes: vertices inside a facet are
//! deduplicated, faces contained in another are dropped, duplicates collapse,
//! and the facet list is kept sorted. Two complexes are equal exactly when
//! their normalized facet sets are equal (labels matter, isomorphism does
//! not).

use std::fmt;

use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::order::VertexOrder;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    /// Sorted, duplicate-free, inclusion-maximal. Never empty; the complex
    /// `{∅}` is represented by the single facet `Face::EMPTY`.
    facets: Vec<Face>,
}

impl Complex {
    /// Builds a complex from raw facet lists, normalizing as described in
    /// the module docs. Rejects an empty input and empty facet lists.
    pub fn build(facet_lists: &[Vec<Vertex>]) -> Result<Complex> {
        if facet_lists.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut faces = Vec::with_capacity(facet_lists.len());
        for (i, list) in facet_lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            faces.push(Face::new(list)?);
        }
        Complex::from_faces(faces)
    }

    /// Builds a complex from faces, dropping non-maximal ones. Unlike
    /// [`Complex::build`] this accepts the empty face, so the complex `{∅}`
    /// is constructible; at least one face is still required.
    pub fn from_faces(faces: impl IntoIterator<Item = Face>) -> Result<Complex> {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyInput);
        }
        faces.sort_unstable();
        faces.dedup();
        let maximal: Vec<Face> = faces
            .iter()
            .copied()
            .filter(|f| !faces.iter().any(|g| *f != *g && f.is_subset_of(*g)))
            .collect();
        Ok(Complex { facets: maximal })
    }

    /// Facets must already be sorted, duplicate-free and pairwise
    /// incomparable; used by enumeration where that holds by construction.
    pub(crate) fn from_sorted_facets_unchecked(facets: Vec<Face>) -> Complex {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(facets
            .iter()
            .all(|f| !facets.iter().any(|g| f != g && f.is_subset_of(*g))));
        Complex { facets }
    }

    /// Facets in lexicographic order of their sorted vertex lists.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Union of all facets, as a vertex set.
    pub fn vertex_set(&self) -> Face {
        let mut m = 0u64;
        for f in &self.facets {
            m |= f.mask();
        }
        Face::from_mask(m)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    /// Max over facet dimensions; -1 for the complex `{∅}`.
    pub fn dimension(&self) -> i32 {
        self.facets.iter().map(|f| f.dimension()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].dimension();
        self.facets.iter().all(|f| f.dimension() == d)
    }

    /// Exactly one facet and it is nonempty.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && !self.facets[0].is_empty()
    }

    /// The complex `{∅}`.
    pub fn is_empty_face_only(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// Whether `f` is a face of the complex (a subset of some facet).
    pub fn contains_face(&self, f: Face) -> bool {
        self.facets.iter().any(|g| f.is_subset_of(*g))
    }

    /// Whether `f` is one of the facets. Binary search on the sorted list.
    pub fn has_facet(&self, f: Face) -> bool {
        self.facets.binary_search(&f).is_ok()
    }

    /// All `k`-dimensional faces, sorted and deduplicated. `k` ranges over
    /// `-1..=dimension`.
    pub fn faces(&self, k: i32) -> Result<Vec<Face>> {
        if k < -1 || k > self.dimension() {
            return Err(Error::DimensionOutOfRange(k));
        }
        if k == -1 {
            return Ok(vec![Face::EMPTY]);
        }
        let mut out: Vec<Face> = Vec::new();
        for f in &self.facets {
            out.extend(f.subsets(k as usize + 1));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Face counts by dimension, `f[k]` = number of `k`-dimensional faces,
    /// for `k` in `0..=dimension`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dimension())
            .map(|k| self.faces(k).expect("k in range").len())
            .collect()
    }

    /// Link of `v`: maximal faces `E` with `v ∉ E` and `E ∪ {v}` a face.
    pub fn link(&self, v: Vertex) -> Result<Complex> {
        if !self.vertex_set().contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        Complex::from_faces(
            self.facets
                .iter()
                .filter(|f| f.contains(v))
                .map(|f| f.remove(v)),
        )
    }

    /// Deletion of `v`: maximal faces avoiding `v`.
    pub fn deletion(&self, v: Vertex) -> Result<Complex> {
        if !self.vertex_set().contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        Complex::from_faces(self.facets.iter().map(|f| f.remove(v)))
    }

    /// Facet-adjacency graph: nodes are facet indices, an edge joins two
    /// facets sharing a codimension-one face. Requires purity.
    pub fn dual_graph(&self) -> Result<DualGraph> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let d = self.dimension();
        let mut edges = Vec::new();
        for i in 0..self.facets.len() {
            for j in i + 1..self.facets.len() {
                if self.facets[i].intersection(self.facets[j]).dimension() == d - 1 {
                    edges.push((i, j));
                }
            }
        }
        Ok(DualGraph { node_count: self.facets.len(), edges })
    }

    pub fn is_strongly_connected(&self) -> Result<bool> {
        Ok(self.dual_graph()?.is_connected())
    }

    /// Replaces each vertex `v` by its position under `order`. The result is
    /// isomorphic to `self` with vertex set `{1, …, n}`.
    pub fn relabel(&self, order: &VertexOrder) -> Result<Complex> {
        if order.vertex_set() != self.vertex_set() {
            return Err(Error::DomainMismatch);
        }
        let mut facets: Vec<Face> = self.facets.iter().map(|f| order.to_positions(*f)).collect();
        facets.sort_unstable();
        Ok(Complex::from_sorted_facets_unchecked(facets))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `(d+1)`-subsets of `{1, …, n}` as facets: the full `d`-skeleton of the
/// simplex on `n` vertices.
pub fn complete_skeleton(n: u32, d: u32) -> Result<Complex> {
    if d >= n {
        return Err(Error::InvalidDimensions);
    }
    let universe = Face::new(&(1..=n).collect::<Vec<_>>())?;
    let facets: Vec<Face> = universe.subsets(d as usize + 1).collect();
    let mut facets = facets;
    facets.sort_unstable();
    Ok(Complex::from_sorted_facets_unchecked(facets))
}

/// Dual graph of a pure complex.
#[derive(Clone, Debug)]
pub struct DualGraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count <= 1 {
            return true;
        }
        // Union-find over facet indices.
        let mut parent: Vec<usize> = (0..self.node_count).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.node_count;
        for &(i, j) in &self.edges {
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                components -= 1;
            }
        }
        components == 1
    }
}
