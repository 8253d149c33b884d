//! Named example complexes, the five-facet non-shellable interval family,
//! gap-free facets, small-instance enumeration, and the brute-force
//! shellability oracle used to cross-check the searches.

use std::fmt;
use std::str::FromStr;

use crate::complex::{complete_skeleton, Complex};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::shelling::{is_shelling, FacetSequence};

/// Identifier of a fixed example complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExampleId {
    /// The three-triangle strip <123, 234, 345>.
    Ex32,
    /// The 20-facet two-dimensional complex on vertices 0..9 whose listed
    /// facet order is a shelling but which admits no lex shelling.
    Ex34,
    /// Hachimori's shellable, not vertex decomposable complex, relabeled so
    /// the standard order 1<2<...<7 induces a lex shelling.
    Hachimori,
    /// The same complex in its original labeling.
    HachimoriOriginal,
    /// The matroid independence complex <123, 125, 234, 245>: every vertex
    /// order induces a lex shelling, yet no order is semi-closed.
    Matroid46,
    /// Triangle with a leaf, edges 14, 23, 24, 34: semi-closed under the
    /// identity labeling but not lex shellable under it.
    SemiclosedGraph,
    /// <123, 124, 134, 235, 245, 345>: semi-closed but not interval.
    Fig2b,
    /// The claw K_{1,3} with center 1: interval but not unit interval.
    Claw,
    /// The path graph on k vertices, edges {i, i+1}.
    PathGraph(u32),
}

impl ExampleId {
    /// The fixed (non-parametric) ids.
    pub const FIXED: [ExampleId; 8] = [
        ExampleId::Ex32,
        ExampleId::Ex34,
        ExampleId::Hachimori,
        ExampleId::HachimoriOriginal,
        ExampleId::Matroid46,
        ExampleId::SemiclosedGraph,
        ExampleId::Fig2b,
        ExampleId::Claw,
    ];
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleId::Ex32 => write!(f, "ex-3.2"),
            ExampleId::Ex34 => write!(f, "ex-3.4"),
            ExampleId::Hachimori => write!(f, "hachimori"),
            ExampleId::HachimoriOriginal => write!(f, "hachimori-original"),
            ExampleId::Matroid46 => write!(f, "matroid-4.6"),
            ExampleId::SemiclosedGraph => write!(f, "semiclosed-graph"),
            ExampleId::Fig2b => write!(f, "fig-2b"),
            ExampleId::Claw => write!(f, "claw"),
            ExampleId::PathGraph(k) => write!(f, "path-graph({k})"),
        }
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExampleId> {
        match s {
            "ex-3.2" => Ok(ExampleId::Ex32),
            "ex-3.4" => Ok(ExampleId::Ex34),
            "hachimori" => Ok(ExampleId::Hachimori),
            "hachimori-original" => Ok(ExampleId::HachimoriOriginal),
            "matroid-4.6" => Ok(ExampleId::Matroid46),
            "semiclosed-graph" => Ok(ExampleId::SemiclosedGraph),
            "fig-2b" => Ok(ExampleId::Fig2b),
            "claw" => Ok(ExampleId::Claw),
            other => {
                if let Some(k) = other
                    .strip_prefix("path-graph(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse::<u32>().ok())
                {
                    if k >= 1 {
                        return Ok(ExampleId::PathGraph(k));
                    }
                }
                Err(Error::UnknownExample(other.to_string()))
            }
        }
    }
}

/// The 20 facets of the ex-3.4 complex, in the order whose steps form a
/// shelling.
pub const EX34_SHELLING_ORDER: [[Vertex; 3]; 20] = [
    [1, 2, 3],
    [1, 2, 9],
    [1, 3, 5],
    [0, 2, 9],
    [2, 3, 4],
    [1, 2, 4],
    [1, 3, 6],
    [1, 2, 7],
    [0, 2, 7],
    [0, 1, 7],
    [2, 8, 9],
    [2, 7, 8],
    [3, 4, 6],
    [3, 4, 5],
    [0, 8, 9],
    [2, 4, 5],
    [7, 8, 9],
    [0, 1, 8],
    [1, 5, 6],
    [2, 5, 6],
];

/// One shedding order for the ex-3.4 complex.
pub const EX34_SHEDDING_ORDER: [Vertex; 7] = [6, 5, 4, 3, 1, 0, 7];

const HACHIMORI: [[Vertex; 3]; 13] = [
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 5],
    [1, 3, 6],
    [1, 4, 7],
    [1, 6, 7],
    [2, 3, 5],
    [2, 3, 6],
    [2, 4, 6],
    [3, 4, 6],
    [3, 4, 7],
    [3, 5, 7],
    [5, 6, 7],
];

/// The relabeling that recovers Hachimori's original vertex names, as
/// (vertex, new label) pairs.
pub const HACHIMORI_RELABELING: [(Vertex, u32); 7] =
    [(1, 5), (2, 6), (3, 2), (4, 7), (5, 3), (6, 1), (7, 4)];

/// The documented facet lists, in their listed order.
pub fn example_facets(id: ExampleId) -> Vec<Vec<Vertex>> {
    match id {
        ExampleId::Ex32 => vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
        ExampleId::Ex34 => EX34_SHELLING_ORDER.iter().map(|f| f.to_vec()).collect(),
        ExampleId::Hachimori => HACHIMORI.iter().map(|f| f.to_vec()).collect(),
        ExampleId::HachimoriOriginal => {
            let base = example(ExampleId::Hachimori);
            let map = crate::order::VertexOrder::from_pairs(&base, &HACHIMORI_RELABELING)
                .expect("fixed bijection");
            base.relabel(&map)
                .expect("bijection on the vertex set")
                .facets()
                .iter()
                .map(|f| f.to_vec())
                .collect()
        }
        ExampleId::Matroid46 => vec![vec![1, 2, 3], vec![1, 2, 5], vec![2, 3, 4], vec![2, 4, 5]],
        ExampleId::SemiclosedGraph => vec![vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]],
        ExampleId::Fig2b => vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![2, 4, 5],
            vec![3, 4, 5],
        ],
        ExampleId::Claw => vec![vec![1, 2], vec![1, 3], vec![1, 4]],
        ExampleId::PathGraph(1) => vec![vec![1]],
        ExampleId::PathGraph(k) => (1..k).map(|i| vec![i, i + 1]).collect(),
    }
}

/// Builds the named example complex.
pub fn example(id: ExampleId) -> Complex {
    Complex::build(&example_facets(id)).expect("fixed facet lists are valid")
}

/// The five-facet pure d-dimensional family that is interval under the
/// identity labeling yet not shellable (d >= 2): the three facets
/// `[1..d+1]`, `[1..d] ∪ {d+2}`, `[1..d] ∪ {d+3}` plus `[2..d+2]` and
/// `[3..d+3]` on vertices `1..=d+3`.
pub fn nonshellable_interval(d: u32) -> Result<Complex> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let run = |lo: Vertex, hi: Vertex| -> Vec<Vertex> { (lo..=hi).collect() };
    let mut f2 = run(1, d);
    f2.push(d + 2);
    let mut f3 = run(1, d);
    f3.push(d + 3);
    Complex::build(&[run(1, d + 1), f2, f3, run(2, d + 2), run(3, d + 3)])
}

/// The gap-free facet `H_i = {i, i+1, …, i+d}`.
pub fn gap_free_facet(i: Vertex, d: u32) -> Result<Face> {
    if i + d > crate::face::MAX_VERTEX {
        return Err(Error::VertexOutOfRange((i + d) as u64));
    }
    Face::new(&(i..=i + d).collect::<Vec<_>>())
}

/// Bounds for the exhaustive enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumBounds {
    pub max_n: u32,
    pub max_d: u32,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds { max_n: 7, max_d: 3 }
    }
}

/// Enumerates every pure d-dimensional complex using all of the vertices
/// `{1, …, n}`: the nonempty facet subsets of the full skeleton that cover
/// the vertex set, optionally filtered to strongly connected ones. Labeled
/// enumeration, no isomorphism reduction; deterministic subset order.
pub fn enumerate_complexes(
    n: u32,
    d: u32,
    strongly_connected: bool,
    bounds: &EnumBounds,
) -> Result<impl Iterator<Item = Complex>> {
    if n > bounds.max_n || d > bounds.max_d {
        return Err(Error::BoundExceeded);
    }
    if d >= n {
        return Err(Error::InvalidDimensions);
    }
    let base: Vec<Face> = complete_skeleton(n, d)?.facets().to_vec();
    let full = Face::new(&(1..=n).collect::<Vec<_>>())?.mask();
    let count = 1u64 << base.len();
    Ok((1..count).filter_map(move |subset| {
        let mut cover = 0u64;
        let mut facets = Vec::with_capacity(subset.count_ones() as usize);
        for (i, f) in base.iter().enumerate() {
            if subset & (1 << i) != 0 {
                cover |= f.mask();
                facets.push(*f);
            }
        }
        if cover != full {
            return None;
        }
        let c = Complex::from_sorted_facets_unchecked(facets);
        if strongly_connected && !c.is_strongly_connected().expect("pure by construction") {
            return None;
        }
        Some(c)
    }))
}

/// Oracle: tries every permutation of the facets through the full
/// [`is_shelling`] check. Capped at 7 facets.
pub fn brute_force_shellable(c: &Complex) -> Result<bool> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let m = c.facet_count();
    if m > 7 {
        return Err(Error::TooManyFacets(m, 7));
    }
    let mut perm: Vec<Face> = c.facets().to_vec();
    fn any_shelling(c: &Complex, perm: &mut [Face], k: usize) -> Result<bool> {
        if k == perm.len() {
            let seq = FacetSequence::new(perm.to_vec());
            return Ok(is_shelling(c, &seq)?.is_shelling());
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if any_shelling(c, perm, k + 1)? {
                return Ok(true);
            }
            perm.swap(k, i);
        }
        Ok(false)
    }
    any_shelling(c, &mut perm, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_shapes() {
        let e = example(ExampleId::Ex34);
        assert_eq!(e.facet_count(), 20);
        assert_eq!(e.vertex_set().to_vec(), (0..=9).collect::<Vec<_>>());
        assert_eq!(e.dimension(), 2);

        let h = example(ExampleId::Hachimori);
        assert_eq!(h.facet_count(), 13);
        assert_eq!(h.vertex_count(), 7);

        assert_eq!(
            example(ExampleId::Claw),
            Complex::build(&[vec![1, 2], vec![1, 3], vec![1, 4]]).unwrap()
        );

        assert_eq!(example(ExampleId::PathGraph(4)).facet_count(), 3);
        assert_eq!(example(ExampleId::PathGraph(1)).dimension(), 0);
    }

    #[test]
    fn hachimori_original_matches_known_facets() {
        let original = example(ExampleId::HachimoriOriginal);
        let expected = Complex::build(&[
            vec![1, 2, 5],
            vec![1, 2, 6],
            vec![1, 2, 7],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 3, 4],
            vec![2, 3, 5],
            vec![2, 3, 6],
            vec![2, 4, 7],
            vec![3, 5, 6],
            vec![4, 5, 7],
            vec![5, 6, 7],
        ])
        .unwrap();
        assert_eq!(original, expected);
        // Relabeling preserves the face counts.
        assert_eq!(original.f_vector(), example(ExampleId::Hachimori).f_vector());
    }

    #[test]
    fn id_round_trip() {
        for id in ExampleId::FIXED {
            assert_eq!(id.to_string().parse::<ExampleId>().unwrap(), id);
        }
        assert_eq!(
            "path-graph(5)".parse::<ExampleId>().unwrap(),
            ExampleId::PathGraph(5)
        );
        assert!(matches!(
            "mystery".parse::<ExampleId>(),
            Err(Error::UnknownExample(_))
        ));
        assert!(matches!(
            "path-graph(0)".parse::<ExampleId>(),
            Err(Error::UnknownExample(_))
        ));
    }

    #[test]
    fn nonshellable_family_instances() {
        let d2 = nonshellable_interval(2).unwrap();
        assert_eq!(
            d2,
            Complex::build(&[
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![2, 3, 4],
                vec![3, 4, 5]
            ])
            .unwrap()
        );
        let d3 = nonshellable_interval(3).unwrap();
        assert_eq!(
            d3,
            Complex::build(&[
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 5],
                vec![1, 2, 3, 6],
                vec![2, 3, 4, 5],
                vec![3, 4, 5, 6]
            ])
            .unwrap()
        );
        for d in 2..=5 {
            let c = nonshellable_interval(d).unwrap();
            assert_eq!(c.facet_count(), 5);
            assert_eq!(c.vertex_count(), (d + 3) as usize);
        }
        assert!(matches!(nonshellable_interval(1), Err(Error::DimensionTooSmall(1))));
    }

    #[test]
    fn gap_free_facets() {
        assert_eq!(gap_free_facet(1, 2).unwrap(), Face::new(&[1, 2, 3]).unwrap());
        assert_eq!(gap_free_facet(3, 2).unwrap(), Face::new(&[3, 4, 5]).unwrap());
        assert_eq!(gap_free_facet(2, 3).unwrap(), Face::new(&[2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn enumeration_small_counts() {
        let bounds = EnumBounds::default();
        // n=3, d=1, connected: three spanning paths and the triangle.
        let got: Vec<Complex> = enumerate_complexes(3, 1, true, &bounds).unwrap().collect();
        assert_eq!(got.len(), 4);

        // n=3, d=2: only the simplex.
        assert_eq!(enumerate_complexes(3, 2, false, &bounds).unwrap().count(), 1);

        // Strong connectivity filter agrees with post-hoc filtering.
        let all: Vec<Complex> = enumerate_complexes(4, 2, false, &bounds).unwrap().collect();
        let filtered: Vec<Complex> = enumerate_complexes(4, 2, true, &bounds).unwrap().collect();
        let refiltered: Vec<Complex> = all
            .iter()
            .filter(|c| c.is_strongly_connected().unwrap())
            .cloned()
            .collect();
        assert_eq!(filtered, refiltered);

        assert!(matches!(
            enumerate_complexes(8, 1, false, &bounds),
            Err(Error::BoundExceeded)
        ));
    }

    #[test]
    fn brute_force_oracle_matches_known_cases() {
        assert!(brute_force_shellable(&example(ExampleId::Ex32)).unwrap());
        assert!(!brute_force_shellable(&nonshellable_interval(2).unwrap()).unwrap());
        let disconnected = Complex::build(&[vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        assert!(!brute_force_shellable(&disconnected).unwrap());
        let too_big = complete_skeleton(5, 2).unwrap();
        assert!(matches!(
            brute_force_shellable(&too_big),
            Err(Error::TooManyFacets(10, 7))
        ));
    }
}
