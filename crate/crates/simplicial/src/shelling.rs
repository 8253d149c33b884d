//! Shellings: verification with witnesses, lexicographic facet orders,
//! the census of vertex orders inducing a lex shelling, and backtracking
//! search for some shelling.
//!
//! A facet order `F1, …, Fm` of a pure d-complex is a shelling when each
//! `<F_{k+1}> ∩ <F1,…,Fk>` is pure of dimension d-1. That intersection is
//! generated by the pairwise intersections `F_{k+1} ∩ F_i`, so the step check
//! never materializes the prefix complex; the definition-literal route exists
//! only as a test oracle.

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::order::VertexOrder;
use crate::search::{Counter, LocalTicks, SearchOpts};

/// An order on all facets of a complex, each exactly once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacetSequence(Vec<Face>);

impl FacetSequence {
    pub fn new(facets: Vec<Face>) -> FacetSequence {
        FacetSequence(facets)
    }

    pub fn facets(&self) -> &[Face] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Errors with `NotAPermutation` unless this sequence lists each facet
    /// of `c` exactly once.
    pub fn validate_for(&self, c: &Complex) -> Result<()> {
        if self.0.len() != c.facet_count() {
            return Err(Error::NotAPermutation);
        }
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.as_slice() != c.facets() {
            return Err(Error::NotAPermutation);
        }
        Ok(())
    }
}

impl std::fmt::Display for FacetSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, facet) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet}")?;
        }
        Ok(())
    }
}

/// A verified shelling: for each step `k >= 2` the set of `(d-1)`-faces
/// generating the intersection of facet `k` with the preceding facets.
#[derive(Clone, Debug)]
pub struct ShellingCertificate {
    pub sequence: FacetSequence,
    pub step_witnesses: Vec<Vec<Face>>,
}

/// The first violating step: `step` is the 1-based index of the offending
/// facet and `bad_face` a maximal face of the intersection of dimension
/// below d-1 (the empty face when nothing is shared).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShellingFailure {
    pub step: usize,
    pub bad_face: Face,
}

#[derive(Clone, Debug)]
pub enum ShellingOutcome {
    Shelling(ShellingCertificate),
    NotShelling(ShellingFailure),
}

impl ShellingOutcome {
    pub fn is_shelling(&self) -> bool {
        matches!(self, ShellingOutcome::Shelling(_))
    }

    pub fn certificate(&self) -> Option<&ShellingCertificate> {
        match self {
            ShellingOutcome::Shelling(c) => Some(c),
            ShellingOutcome::NotShelling(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&ShellingFailure> {
        match self {
            ShellingOutcome::Shelling(_) => None,
            ShellingOutcome::NotShelling(f) => Some(f),
        }
    }
}

/// Whether appending `facet` after `preds` is a valid shelling step.
///
/// Let R be the vertices `v` of `facet` with `facet \ {v}` realized as an
/// intersection with some predecessor. The step is valid iff every pairwise
/// intersection either has size d itself or is contained in `facet \ {v}`
/// for some `v` in R, i.e. misses some vertex of R.
pub(crate) fn shelling_step_ok(facet: Face, preds: &[Face]) -> bool {
    let full = facet.len(); // d + 1
    let mut r = 0u64;
    for &p in preds {
        let x = facet.intersection(p);
        if x.len() + 1 == full {
            r |= facet.difference(x).mask();
        }
    }
    for &p in preds {
        let x = facet.intersection(p);
        if x.len() + 1 != full && r & !x.mask() == 0 {
            return false;
        }
    }
    true
}

/// Checks Definition-style shelling of `seq` and either returns per-step
/// witnesses or the first failing step. Single-facet sequences pass
/// vacuously; for d >= 1 a step sharing no vertex with its predecessors
/// fails (its intersection is only the empty face).
pub fn is_shelling(c: &Complex, seq: &FacetSequence) -> Result<ShellingOutcome> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    seq.validate_for(c)?;
    let d = c.dimension();
    let mut step_witnesses = Vec::with_capacity(seq.len().saturating_sub(1));
    for k in 1..seq.len() {
        let facet = seq.facets()[k];
        let mut inters: Vec<Face> =
            seq.facets()[..k].iter().map(|p| facet.intersection(*p)).collect();
        inters.sort_unstable();
        inters.dedup();
        let maximal: Vec<Face> = inters
            .iter()
            .copied()
            .filter(|x| !inters.iter().any(|y| x != y && x.is_subset_of(*y)))
            .collect();
        if let Some(bad) = maximal.iter().copied().find(|x| x.dimension() != d - 1) {
            return Ok(ShellingOutcome::NotShelling(ShellingFailure {
                step: k + 1,
                bad_face: bad,
            }));
        }
        step_witnesses.push(maximal);
    }
    Ok(ShellingOutcome::Shelling(ShellingCertificate {
        sequence: seq.clone(),
        step_witnesses,
    }))
}

/// Facets sorted lexicographically by their sorted position tuples under `o`.
pub fn lex_facet_order(c: &Complex, o: &VertexOrder) -> Result<FacetSequence> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    if o.vertex_set() != c.vertex_set() {
        return Err(Error::InvalidOrder);
    }
    let mut facets: Vec<Face> = c.facets().to_vec();
    facets.sort_unstable_by_key(|f| o.to_positions(*f));
    Ok(FacetSequence(facets))
}

/// Runs [`is_shelling`] on the lexicographic facet order induced by `o`.
pub fn is_lex_shellable_under(c: &Complex, o: &VertexOrder) -> Result<ShellingOutcome> {
    let seq = lex_facet_order(c, o)?;
    is_shelling(c, &seq)
}

/// Greedy vertex order for a connected graph: the smallest vertex first,
/// then repeatedly the smallest vertex adjacent to an earlier one. Returns
/// None when the graph is disconnected.
pub fn greedy_graph_order(c: &Complex) -> Result<Option<VertexOrder>> {
    if c.dimension() != 1 || !c.is_pure() {
        return Err(Error::InvalidDimensions);
    }
    let vset = c.vertex_set();
    let first = vset.min_vertex().expect("nonempty complex");
    let mut placed = Face::EMPTY.insert(first);
    let mut by_position = vec![first];
    while placed != vset {
        let mut next: Option<Vertex> = None;
        for v in vset.difference(placed).vertices() {
            let touches = c
                .facets()
                .iter()
                .any(|e| e.contains(v) && !e.remove(v).intersection(placed).is_empty());
            if touches {
                next = Some(v);
                break;
            }
        }
        match next {
            Some(v) => {
                placed = placed.insert(v);
                by_position.push(v);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(VertexOrder::new(c, &by_position)?))
}

/// Backtracking search for some shelling, exploring facets in lexicographic
/// order at each depth and pruning a prefix as soon as its last step fails.
pub fn find_shelling(c: &Complex) -> Result<Option<ShellingCertificate>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = c.facets();
    let mut chosen: Vec<Face> = Vec::with_capacity(facets.len());
    let mut used = vec![false; facets.len()];
    if !dfs_shelling(facets, &mut chosen, &mut used) {
        return Ok(None);
    }
    let seq = FacetSequence(chosen);
    match is_shelling(c, &seq)? {
        ShellingOutcome::Shelling(cert) => Ok(Some(cert)),
        ShellingOutcome::NotShelling(_) => unreachable!("search produced a non-shelling"),
    }
}

fn dfs_shelling(facets: &[Face], chosen: &mut Vec<Face>, used: &mut [bool]) -> bool {
    if chosen.len() == facets.len() {
        return true;
    }
    for i in 0..facets.len() {
        if used[i] {
            continue;
        }
        if chosen.is_empty() || shelling_step_ok(facets[i], chosen) {
            used[i] = true;
            chosen.push(facets[i]);
            if dfs_shelling(facets, chosen, used) {
                return true;
            }
            chosen.pop();
            used[i] = false;
        }
    }
    false
}

/// Exact count of vertex orders whose lexicographic facet order is a
/// shelling, over all n! orders.
pub fn census_lex_orders(c: &Complex) -> Result<u64> {
    census_lex_orders_with(c, &SearchOpts::default())
}

/// As [`census_lex_orders`], with budget/progress control. The top of the
/// assignment tree is split across rayon workers; the count is a sum and
/// therefore schedule-independent.
///
/// The search assigns positions 1, 2, … to vertices and maintains the
/// facets in an ordered partition by the revealed prefix of their position
/// tuples. Buckets only ever split, so once a facet sits alone in its bucket
/// the set of facets preceding it is fixed and its shelling step can be
/// checked; a failed check prunes the whole subtree. When every bucket is a
/// singleton the remaining positions are free and the subtree contributes a
/// factorial.
pub fn census_lex_orders_with(c: &Complex, opts: &SearchOpts) -> Result<u64> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let n = c.vertex_count();
    let m = c.facet_count();
    if n > 20 || m > 64 {
        return Err(Error::BoundExceeded);
    }
    let counter = Counter::new(*opts);
    let tables = CensusTables::new(c);
    if m == 1 {
        return Ok(tables.factorials[n]);
    }
    let vertices = c.vertex_set().to_vec();
    let subtotals: Vec<Option<u64>> = vertices
        .par_iter()
        .map(|&first| {
            let mut run = CensusRun::new(&tables);
            run.arena.push(tables.all_facets);
            let sub = run.descend(0..1, 0, first, &counter);
            if !run.ticks.flush(&counter) {
                return None;
            }
            sub
        })
        .collect();
    let mut total = 0u64;
    for sub in subtotals {
        match sub {
            Some(s) => total += s,
            None => return Err(Error::Exhausted { visited: counter.visited() }),
        }
    }
    Ok(total)
}

struct CensusTables {
    n: usize,
    m: usize,
    vertices: Vec<Vertex>,
    /// Bitmask over facet indices containing each vertex id.
    facets_with: [u64; 64],
    /// For facets i, j: the vertex of F_i outside F_i ∩ F_j when the
    /// intersection has codimension one in F_i, else 0.
    extra_bit: Vec<u64>,
    /// F_i ∩ F_j as a vertex mask.
    inter: Vec<u64>,
    /// Whether |F_i ∩ F_j| = d.
    codim_one: Vec<bool>,
    all_facets: u64,
    factorials: [u64; 21],
}

impl CensusTables {
    fn new(c: &Complex) -> CensusTables {
        let facets = c.facets();
        let m = facets.len();
        let n = c.vertex_count();
        let mut facets_with = [0u64; 64];
        for (i, f) in facets.iter().enumerate() {
            for v in f.vertices() {
                facets_with[v as usize] |= 1 << i;
            }
        }
        let mut extra_bit = vec![0u64; m * m];
        let mut inter = vec![0u64; m * m];
        let mut codim_one = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                let x = facets[i].intersection(facets[j]);
                inter[i * m + j] = x.mask();
                if i != j && x.len() + 1 == facets[i].len() {
                    codim_one[i * m + j] = true;
                    extra_bit[i * m + j] = facets[i].difference(x).mask();
                }
            }
        }
        let mut factorials = [1u64; 21];
        for k in 1..21 {
            factorials[k] = factorials[k - 1] * k as u64;
        }
        CensusTables {
            n,
            m,
            vertices: c.vertex_set().to_vec(),
            facets_with,
            extra_bit,
            inter,
            codim_one,
            all_facets: if m == 64 { u64::MAX } else { (1u64 << m) - 1 },
            factorials,
        }
    }

    /// Shelling step for facet `i` against the fixed predecessor set.
    fn step_ok(&self, i: usize, preds: u64) -> bool {
        if preds == 0 {
            return true; // lexicographically first facet
        }
        let row = i * self.m;
        let mut r = 0u64;
        let mut p = preds;
        while p != 0 {
            let j = p.trailing_zeros() as usize;
            p &= p - 1;
            r |= self.extra_bit[row + j];
        }
        let mut p = preds;
        while p != 0 {
            let j = p.trailing_zeros() as usize;
            p &= p - 1;
            if !self.codim_one[row + j] && r & !self.inter[row + j] == 0 {
                return false;
            }
        }
        true
    }
}

struct CensusRun<'a> {
    t: &'a CensusTables,
    /// Stack arena of bucket lists; each DFS level appends its refined list
    /// and truncates on return.
    arena: Vec<u64>,
    ticks: LocalTicks,
}

impl<'a> CensusRun<'a> {
    fn new(t: &'a CensusTables) -> CensusRun<'a> {
        CensusRun { t, arena: Vec::with_capacity(t.m * (t.n + 1)), ticks: LocalTicks::new() }
    }

    /// Assigns position `depth + 1` to `vertex`, refining the parent bucket
    /// list at `parent` and recursing over the remaining vertices. Returns
    /// the number of completing assignments, or None on budget exhaustion.
    fn descend(
        &mut self,
        parent: std::ops::Range<usize>,
        mut assigned: u64,
        vertex: Vertex,
        counter: &Counter,
    ) -> Option<u64> {
        if !self.ticks.tick(counter) {
            return None;
        }
        let depth = {
            // Position being assigned, 0-based.
            assigned.count_ones() as usize
        };
        assigned |= 1 << vertex;
        let start = self.arena.len();
        let with_v = self.t.facets_with[vertex as usize];
        let mut prefix = 0u64;
        let mut ok = true;
        for idx in parent.clone() {
            let bucket = self.arena[idx];
            let multi = bucket & (bucket - 1) != 0;
            for part in [bucket & with_v, bucket & !with_v] {
                if part == 0 {
                    continue;
                }
                if multi && part & (part - 1) == 0 {
                    // Newly singled out: its predecessor set is now fixed.
                    let i = part.trailing_zeros() as usize;
                    if !self.t.step_ok(i, prefix) {
                        ok = false;
                        break;
                    }
                }
                self.arena.push(part);
                prefix |= part;
            }
            if !ok {
                break;
            }
        }
        let total = if !ok {
            Some(0)
        } else {
            let child = start..self.arena.len();
            if child.len() == self.t.m {
                // Fully separated: every remaining assignment completes.
                Some(self.t.factorials[self.t.n - depth - 1])
            } else if depth + 1 == self.t.n {
                Some(1)
            } else {
                let mut sum = Some(0u64);
                for vi in 0..self.t.vertices.len() {
                    let v = self.t.vertices[vi];
                    if assigned & (1 << v) != 0 {
                        continue;
                    }
                    match self.descend(child.clone(), assigned, v, counter) {
                        Some(s) => sum = sum.map(|t| t + s),
                        None => {
                            sum = None;
                            break;
                        }
                    }
                }
                sum
            }
        };
        self.arena.truncate(start);
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(lists: &[&[Vertex]]) -> Complex {
        Complex::build(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn f(vs: &[Vertex]) -> Face {
        Face::new(vs).unwrap()
    }

    fn seq(lists: &[&[Vertex]]) -> FacetSequence {
        FacetSequence::new(lists.iter().map(|l| f(l)).collect())
    }

    #[test]
    fn shelling_of_triangle_strip() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let out = is_shelling(&c, &seq(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]])).unwrap();
        let cert = out.certificate().expect("a shelling");
        assert_eq!(cert.step_witnesses, vec![vec![f(&[2, 3])], vec![f(&[3, 4])]]);

        let out = is_shelling(&c, &seq(&[&[1, 2, 3], &[3, 4, 5], &[2, 3, 4]])).unwrap();
        let fail = out.failure().expect("not a shelling");
        assert_eq!(fail.step, 2);
        assert_eq!(fail.bad_face, f(&[3]));

        assert!(matches!(
            is_shelling(&c, &seq(&[&[1, 2, 3], &[2, 3, 4]])),
            Err(Error::NotAPermutation)
        ));
        assert!(matches!(
            is_shelling(&c, &seq(&[&[1, 2, 3], &[2, 3, 4], &[2, 3, 4]])),
            Err(Error::NotAPermutation)
        ));
    }

    #[test]
    fn single_facet_is_vacuous() {
        let c = build(&[&[1, 2, 3]]);
        let out = is_shelling(&c, &seq(&[&[1, 2, 3]])).unwrap();
        assert!(out.is_shelling());
        assert!(out.certificate().unwrap().step_witnesses.is_empty());
    }

    #[test]
    fn zero_dimensional_complexes_shell() {
        // The intersection of distinct points is the empty face, which has
        // the required dimension d - 1 = -1.
        let points = build(&[&[1], &[2], &[3]]);
        let out = is_shelling(&points, &seq(&[&[1], &[2], &[3]])).unwrap();
        assert!(out.is_shelling());
    }

    #[test]
    fn disconnected_graph_fails_with_empty_intersection() {
        let g = build(&[&[1, 2], &[3, 4]]);
        let out = is_shelling(&g, &seq(&[&[1, 2], &[3, 4]])).unwrap();
        let fail = out.failure().unwrap();
        assert_eq!(fail.step, 2);
        assert_eq!(fail.bad_face, Face::EMPTY);
    }

    #[test]
    fn lex_order_under_identity_and_relabeling() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let id = VertexOrder::identity(&c);
        assert_eq!(
            lex_facet_order(&c, &id).unwrap().facets(),
            &[f(&[1, 2, 3]), f(&[2, 3, 4]), f(&[3, 4, 5])]
        );

        // Order 1 < 3 < 5 < 2 < 4 sends the facets to 123, 345, 234.
        let o = VertexOrder::new(&c, &[1, 3, 5, 2, 4]).unwrap();
        assert_eq!(
            lex_facet_order(&c, &o).unwrap().facets(),
            &[f(&[1, 2, 3]), f(&[3, 4, 5]), f(&[2, 3, 4])]
        );
        let out = is_lex_shellable_under(&c, &o).unwrap();
        let fail = out.failure().expect("not a lex shelling under 1<3<5<2<4");
        assert_eq!(fail.step, 2);
        assert_eq!(fail.bad_face, f(&[3]));

        assert!(is_lex_shellable_under(&c, &id).unwrap().is_shelling());
    }

    #[test]
    fn semi_closed_graph_is_not_lex_shellable() {
        let g = build(&[&[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        let out = is_lex_shellable_under(&g, &VertexOrder::identity(&g)).unwrap();
        let fail = out.failure().unwrap();
        assert_eq!(fail.step, 2);
        assert_eq!(fail.bad_face, Face::EMPTY);
    }

    #[test]
    fn find_shelling_examples() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let cert = find_shelling(&c).unwrap().expect("shellable");
        assert!(is_shelling(&c, &cert.sequence).unwrap().is_shelling());

        let single = build(&[&[4, 7]]);
        assert!(find_shelling(&single).unwrap().is_some());

        let ns = build(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[2, 3, 4], &[3, 4, 5]]);
        assert!(find_shelling(&ns).unwrap().is_none());
    }

    #[test]
    fn census_small_cases() {
        // A single edge: both orders give the one-facet shelling.
        let edge = build(&[&[1, 2]]);
        assert_eq!(census_lex_orders(&edge).unwrap(), 2);

        // Path 1-2-3: orders placing 1 and 3 at the extremes of the facet
        // order work; brute force gives 4.
        let path = build(&[&[1, 2], &[2, 3]]);
        assert_eq!(census_lex_orders(&path).unwrap(), census_brute_force(&path));

        let strip = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        assert_eq!(census_lex_orders(&strip).unwrap(), census_brute_force(&strip));

        let g = build(&[&[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert_eq!(census_lex_orders(&g).unwrap(), census_brute_force(&g));
    }

    #[test]
    fn census_budget_exhaustion() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6], &[5, 6, 7]]);
        let opts = SearchOpts { budget: Some(1), progress: None };
        assert!(matches!(
            census_lex_orders_with(&c, &opts),
            Err(Error::Exhausted { .. })
        ));
    }

    #[test]
    fn greedy_graph_order_builds_connected_orders() {
        let path = build(&[&[3, 7], &[7, 9], &[1, 9]]);
        let o = greedy_graph_order(&path).unwrap().expect("connected");
        assert_eq!(o.by_position(), &[1, 9, 7, 3]);
        assert!(is_lex_shellable_under(&path, &o).unwrap().is_shelling());

        let disconnected = build(&[&[1, 2], &[3, 4]]);
        assert!(greedy_graph_order(&disconnected).unwrap().is_none());

        let not_graph = build(&[&[1, 2, 3]]);
        assert!(matches!(greedy_graph_order(&not_graph), Err(Error::InvalidDimensions)));
    }

    /// Unpruned oracle: run `is_shelling` on the lex facet order of every
    /// permutation of the vertex set.
    fn census_brute_force(c: &Complex) -> u64 {
        let verts = c.vertex_set().to_vec();
        let mut perm = verts.clone();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            let o = VertexOrder::new(c, p).unwrap();
            if is_lex_shellable_under(c, &o).unwrap().is_shelling() {
                count += 1;
            }
        });
        count
    }

    fn permute(items: &mut [Vertex], k: usize, visit: &mut impl FnMut(&[Vertex])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}
