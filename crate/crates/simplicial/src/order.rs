//! Vertex orders and the three order classes: unit interval, interval, and
//! semi-closed.
//!
//! An order assigns positions `1..=n` to the vertices of a complex. All
//! predicates read a facet `v0 v1 … vd` sorted by position, and ask for the
//! presence of other facets described by position tuples. Replacement tuples
//! are strictly increasing (faces are sets, written sorted), so in clause
//! terms: the down-set clause fixes the first vertex and lowers the rest, the
//! up-set clause fixes the last vertex and raises the rest.

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::search::{Counter, LocalTicks, SearchOpts};

/// A bijection from the vertex set of a complex onto positions `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexOrder {
    by_position: Vec<Vertex>,
    pos_of: [u8; 64],
    vset: Face,
}

impl VertexOrder {
    /// Builds an order from the vertex ids listed in increasing position:
    /// `[1, 3, 5, 2, 4]` puts vertex 1 first and vertex 4 last.
    pub fn new(c: &Complex, by_position: &[Vertex]) -> Result<VertexOrder> {
        // Positions are reused as vertex ids by `relabel`, so they must fit
        // the same 63-id universe.
        if by_position.len() > 63 {
            return Err(Error::BoundExceeded);
        }
        let mut pos_of = [0u8; 64];
        let mut seen = Face::EMPTY;
        for (i, &v) in by_position.iter().enumerate() {
            if v > crate::face::MAX_VERTEX {
                return Err(Error::VertexOutOfRange(v as u64));
            }
            if seen.contains(v) {
                return Err(Error::NotABijection);
            }
            seen = seen.insert(v);
            pos_of[v as usize] = (i + 1) as u8;
        }
        if seen != c.vertex_set() {
            return Err(Error::DomainMismatch);
        }
        Ok(VertexOrder { by_position: by_position.to_vec(), pos_of, vset: seen })
    }

    /// The order given by increasing vertex label.
    pub fn identity(c: &Complex) -> VertexOrder {
        let verts = c.vertex_set().to_vec();
        VertexOrder::new(c, &verts).expect("vertex set orders itself")
    }

    /// Builds an order from `(vertex, position)` pairs.
    pub fn from_pairs(c: &Complex, pairs: &[(Vertex, u32)]) -> Result<VertexOrder> {
        let mut by_position = vec![u32::MAX; pairs.len()];
        for &(v, p) in pairs {
            if p == 0 || p as usize > pairs.len() || by_position[p as usize - 1] != u32::MAX {
                return Err(Error::NotABijection);
            }
            by_position[p as usize - 1] = v;
        }
        VertexOrder::new(c, &by_position)
    }

    pub fn len(&self) -> usize {
        self.by_position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_position.is_empty()
    }

    /// Vertices listed in increasing position.
    pub fn by_position(&self) -> &[Vertex] {
        &self.by_position
    }

    pub fn vertex_set(&self) -> Face {
        self.vset
    }

    /// Position of `v`, in `1..=n`.
    pub fn position(&self, v: Vertex) -> Option<u32> {
        if self.vset.contains(v) {
            Some(self.pos_of[v as usize] as u32)
        } else {
            None
        }
    }

    pub fn vertex_at(&self, position: u32) -> Option<Vertex> {
        self.by_position.get(position.checked_sub(1)? as usize).copied()
    }

    /// Maps a face into position space: bit `p` set iff the vertex at
    /// position `p` lies in the face.
    pub fn to_positions(&self, f: Face) -> Face {
        debug_assert!(f.is_subset_of(self.vset));
        let mut m = 0u64;
        for v in f.vertices() {
            m |= 1 << self.pos_of[v as usize];
        }
        Face::from_mask(m)
    }

    /// Inverse of [`VertexOrder::to_positions`].
    pub fn from_positions(&self, f: Face) -> Face {
        let mut m = 0u64;
        for p in f.vertices() {
            m |= 1 << self.by_position[p as usize - 1];
        }
        Face::from_mask(m)
    }
}

/// The three nested order classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderClass {
    UnitInterval,
    Interval,
    SemiClosed,
}

impl OrderClass {
    pub const ALL: [OrderClass; 3] = [
        OrderClass::UnitInterval,
        OrderClass::Interval,
        OrderClass::SemiClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderClass::UnitInterval => "unit-interval",
            OrderClass::Interval => "interval",
            OrderClass::SemiClosed => "semi-closed",
        }
    }
}

impl std::str::FromStr for OrderClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unit-interval" | "unit_interval" | "ui" => Ok(OrderClass::UnitInterval),
            "interval" => Ok(OrderClass::Interval),
            "semi-closed" | "semi_closed" | "sc" => Ok(OrderClass::SemiClosed),
            other => Err(format!("unknown order class {other:?}")),
        }
    }
}

/// Witness for a failed order predicate: `facet` needs `missing` present,
/// and `missing` is not a facet. Both are in original vertex labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderViolation {
    pub facet: Face,
    pub missing: Face,
}

/// Result of an order-predicate check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderCheck {
    Satisfied,
    Violated(OrderViolation),
}

impl OrderCheck {
    pub fn holds(&self) -> bool {
        matches!(self, OrderCheck::Satisfied)
    }

    pub fn violation(&self) -> Option<&OrderViolation> {
        match self {
            OrderCheck::Satisfied => None,
            OrderCheck::Violated(v) => Some(v),
        }
    }
}

/// Enumerates the facets required by the unit interval condition for a facet
/// with the given sorted positions: every `(d+1)`-subset of the contiguous
/// position run `[p0, pd]`. Returns the first one `is_facet` rejects.
fn first_missing_unit_interval(
    positions: Face,
    is_facet: &mut impl FnMut(Face) -> bool,
) -> Option<Face> {
    let k = positions.len();
    let lo = positions.min_vertex().expect("nonempty facet");
    let hi = positions.max_vertex().expect("nonempty facet");
    let run = Face::from_mask(((1u128 << (hi + 1)) - (1u128 << lo)) as u64);
    run.subsets(k).find(|req| !is_facet(*req))
}

/// Down-set requirement: tuples `(p0, w1, …, wd)` with `p0 < w1 < ⋯ < wd`
/// and `wi <= pi`, in lexicographic order.
fn first_missing_down_set(positions: &[u8], is_facet: &mut impl FnMut(Face) -> bool) -> Option<Face> {
    fn rec(
        positions: &[u8],
        i: usize,
        min: u8,
        acc: u64,
        is_facet: &mut impl FnMut(Face) -> bool,
    ) -> Option<Face> {
        if i == positions.len() {
            let req = Face::from_mask(acc);
            return if is_facet(req) { None } else { Some(req) };
        }
        for w in min..=positions[i] {
            if let Some(hit) = rec(positions, i + 1, w + 1, acc | 1 << w, is_facet) {
                return Some(hit);
            }
        }
        None
    }
    let p0 = positions[0];
    rec(positions, 1, p0 + 1, 1 << p0, is_facet)
}

/// Up-set requirement: tuples `(w0, …, w_{d-1}, pd)` with `w0 < ⋯ < w_{d-1} < pd`
/// and `wi >= pi`, in lexicographic order.
fn first_missing_up_set(positions: &[u8], is_facet: &mut impl FnMut(Face) -> bool) -> Option<Face> {
    fn rec(
        positions: &[u8],
        i: usize,
        min: u8,
        acc: u64,
        is_facet: &mut impl FnMut(Face) -> bool,
    ) -> Option<Face> {
        let last = positions.len() - 1;
        if i == last {
            let req = Face::from_mask(acc | 1 << positions[last]);
            return if is_facet(req) { None } else { Some(req) };
        }
        let lo = min.max(positions[i]);
        // Positions must stay strictly increasing and end below pd.
        let hi = positions[last] - (last - i) as u8;
        for w in lo..=hi {
            if let Some(hit) = rec(positions, i + 1, w + 1, acc | 1 << w, is_facet) {
                return Some(hit);
            }
        }
        None
    }
    rec(positions, 0, 0, 0, is_facet)
}

/// First missing requirement for one facet under `class`, or None if the
/// facet satisfies the class condition. `positions` is the facet in position
/// space.
fn facet_first_missing(
    class: OrderClass,
    positions: Face,
    is_facet: &mut impl FnMut(Face) -> bool,
) -> Option<Face> {
    let pvec: Vec<u8> = positions.vertices().map(|p| p as u8).collect();
    match class {
        OrderClass::UnitInterval => first_missing_unit_interval(positions, is_facet),
        OrderClass::Interval => first_missing_down_set(&pvec, is_facet),
        OrderClass::SemiClosed => {
            // The facet passes if either clause holds; when both fail the
            // reported witness is the lexicographically smaller of the two
            // first-missing faces.
            let down = first_missing_down_set(&pvec, is_facet)?;
            let up = first_missing_up_set(&pvec, is_facet)?;
            Some(down.min(up))
        }
    }
}

fn validate(c: &Complex, o: &VertexOrder) -> Result<()> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    if o.vertex_set() != c.vertex_set() {
        return Err(Error::InvalidOrder);
    }
    Ok(())
}

/// Checks the given class predicate. On failure the witness is the first
/// violating (facet, missing) pair: facets are scanned in lexicographic
/// order of their position tuples, requirements likewise.
pub fn check_order(c: &Complex, o: &VertexOrder, class: OrderClass) -> Result<OrderCheck> {
    validate(c, o)?;
    let mut pfacets: Vec<Face> = c.facets().iter().map(|f| o.to_positions(*f)).collect();
    pfacets.sort_unstable();
    for &pf in &pfacets {
        let mut is_facet = |req: Face| pfacets.binary_search(&req).is_ok();
        if let Some(missing) = facet_first_missing(class, pf, &mut is_facet) {
            return Ok(OrderCheck::Violated(OrderViolation {
                facet: o.from_positions(pf),
                missing: o.from_positions(missing),
            }));
        }
    }
    Ok(OrderCheck::Satisfied)
}

pub fn is_unit_interval(c: &Complex, o: &VertexOrder) -> Result<OrderCheck> {
    check_order(c, o, OrderClass::UnitInterval)
}

pub fn is_interval(c: &Complex, o: &VertexOrder) -> Result<OrderCheck> {
    check_order(c, o, OrderClass::Interval)
}

pub fn is_semi_closed(c: &Complex, o: &VertexOrder) -> Result<OrderCheck> {
    check_order(c, o, OrderClass::SemiClosed)
}

/// Backtracking search over position assignments. Positions are filled in
/// increasing order; once a facet has all its vertices placed, its class
/// condition is fully determined and is checked on the spot.
struct OrderSearch<'a> {
    c: &'a Complex,
    class: OrderClass,
    vertices: Vec<Vertex>,
    /// Facet indices containing each vertex id.
    facets_of: Vec<Vec<usize>>,
    chosen: Vec<Vertex>,
    pos_of: [u8; 64],
    assigned: Face,
}

impl<'a> OrderSearch<'a> {
    fn new(c: &'a Complex, class: OrderClass) -> OrderSearch<'a> {
        let vertices = c.vertex_set().to_vec();
        let mut facets_of = vec![Vec::new(); 64];
        for (i, f) in c.facets().iter().enumerate() {
            for v in f.vertices() {
                facets_of[v as usize].push(i);
            }
        }
        OrderSearch {
            c,
            class,
            vertices,
            facets_of,
            chosen: Vec::new(),
            pos_of: [0; 64],
            assigned: Face::EMPTY,
        }
    }

    fn assign(&mut self, v: Vertex) {
        self.chosen.push(v);
        self.pos_of[v as usize] = self.chosen.len() as u8;
        self.assigned = self.assigned.insert(v);
    }

    fn unassign(&mut self) {
        let v = self.chosen.pop().expect("assign/unassign balanced");
        self.pos_of[v as usize] = 0;
        self.assigned = self.assigned.remove(v);
    }

    /// Checks every facet completed by the latest assignment.
    fn completed_facets_ok(&self) -> bool {
        let v = *self.chosen.last().expect("at least one assignment");
        for &fi in &self.facets_of[v as usize] {
            let facet = self.c.facets()[fi];
            if !facet.is_subset_of(self.assigned) {
                continue;
            }
            let mut positions = 0u64;
            for w in facet.vertices() {
                positions |= 1 << self.pos_of[w as usize];
            }
            let mut is_facet = |req: Face| {
                let mut vertex_mask = 0u64;
                for p in req.vertices() {
                    vertex_mask |= 1 << self.chosen[p as usize - 1];
                }
                self.c.has_facet(Face::from_mask(vertex_mask))
            };
            if facet_first_missing(self.class, Face::from_mask(positions), &mut is_facet).is_some()
            {
                return false;
            }
        }
        true
    }

    /// First satisfying order in lexicographic position-assignment order.
    fn find(&mut self) -> Option<VertexOrder> {
        if self.chosen.len() == self.vertices.len() {
            return Some(VertexOrder::new(self.c, &self.chosen).expect("assignment is a bijection"));
        }
        for i in 0..self.vertices.len() {
            let v = self.vertices[i];
            if self.assigned.contains(v) {
                continue;
            }
            self.assign(v);
            if self.completed_facets_ok() {
                if let Some(found) = self.find() {
                    return Some(found);
                }
            }
            self.unassign();
        }
        None
    }

    /// Visits every satisfying assignment, in lexicographic order.
    fn for_each(&mut self, visit: &mut impl FnMut(&[Vertex])) {
        if self.chosen.len() == self.vertices.len() {
            visit(&self.chosen);
            return;
        }
        for i in 0..self.vertices.len() {
            let v = self.vertices[i];
            if self.assigned.contains(v) {
                continue;
            }
            self.assign(v);
            if self.completed_facets_ok() {
                self.for_each(visit);
            }
            self.unassign();
        }
    }

    /// Counts satisfying orders below the current partial assignment.
    /// Returns None if the budget ran out.
    fn count(&mut self, counter: &Counter, ticks: &mut LocalTicks) -> Option<u64> {
        if self.chosen.len() == self.vertices.len() {
            return Some(1);
        }
        let mut total = 0u64;
        for i in 0..self.vertices.len() {
            let v = self.vertices[i];
            if self.assigned.contains(v) {
                continue;
            }
            if !ticks.tick(counter) {
                return None;
            }
            self.assign(v);
            let sub = if self.completed_facets_ok() {
                self.count(counter, ticks)
            } else {
                Some(0)
            };
            self.unassign();
            total += sub?;
        }
        Some(total)
    }
}

/// Finds some order satisfying `class`, or None if no order does.
/// Deterministic: the first success under lexicographic position assignment,
/// trying vertices in increasing label order at each position.
pub fn find_order(c: &Complex, class: OrderClass) -> Result<Option<VertexOrder>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(OrderSearch::new(c, class).find())
}

/// Collects every order satisfying `class`, in the deterministic search
/// order of [`find_order`]. Intended for small vertex sets; the result can
/// hold up to n! orders.
pub fn satisfying_orders(c: &Complex, class: OrderClass) -> Result<Vec<VertexOrder>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let mut out = Vec::new();
    OrderSearch::new(c, class).for_each(&mut |chosen| {
        out.push(VertexOrder::new(c, chosen).expect("assignment is a bijection"));
    });
    Ok(out)
}

/// Exact count of vertex orders satisfying `class`, over all n! orders.
pub fn count_orders(c: &Complex, class: OrderClass) -> Result<u64> {
    count_orders_with(c, class, &SearchOpts::default())
}

/// As [`count_orders`], splitting the top of the permutation tree across
/// rayon workers; the count is schedule-independent.
pub fn count_orders_with(c: &Complex, class: OrderClass, opts: &SearchOpts) -> Result<u64> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    if c.vertex_count() > 20 {
        // n! would overflow the count.
        return Err(Error::BoundExceeded);
    }
    let counter = Counter::new(*opts);
    let vertices = c.vertex_set().to_vec();
    let subtotals: Vec<Option<u64>> = vertices
        .par_iter()
        .map(|&first| {
            let mut search = OrderSearch::new(c, class);
            let mut ticks = LocalTicks::new();
            search.assign(first);
            let sub = if search.completed_facets_ok() {
                search.count(&counter, &mut ticks)
            } else {
                Some(0)
            };
            if !ticks.flush(&counter) {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn build(lists: &[&[Vertex]]) -> Complex {
        Complex::build(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn f(vs: &[Vertex]) -> Face {
        Face::new(vs).unwrap()
    }

    #[test]
    fn order_construction() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let o = VertexOrder::new(&c, &[1, 3, 5, 2, 4]).unwrap();
        assert_eq!(o.position(1), Some(1));
        assert_eq!(o.position(4), Some(5));
        assert_eq!(o.vertex_at(3), Some(5));
        assert_eq!(VertexOrder::identity(&c).by_position(), &[1, 2, 3, 4, 5]);

        assert!(matches!(
            VertexOrder::new(&c, &[1, 2, 3, 4]),
            Err(Error::DomainMismatch)
        ));
        assert!(matches!(
            VertexOrder::new(&c, &[1, 1, 3, 4, 5]),
            Err(Error::NotABijection)
        ));
    }

    #[test]
    fn relabel_matches_position_map() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let o = VertexOrder::from_pairs(&c, &[(1, 1), (2, 4), (3, 2), (4, 5), (5, 3)]).unwrap();
        let relabeled = c.relabel(&o).unwrap();
        assert_eq!(relabeled, build(&[&[1, 2, 4], &[2, 4, 5], &[2, 3, 5]]));

        let id = VertexOrder::identity(&c);
        assert_eq!(c.relabel(&id).unwrap(), c);
    }

    #[test]
    fn unit_interval_examples() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        assert!(is_unit_interval(&c, &VertexOrder::identity(&c)).unwrap().holds());

        let simplex = build(&[&[1, 2, 3]]);
        for perm in [[1, 2, 3], [3, 1, 2], [2, 3, 1]] {
            let o = VertexOrder::new(&simplex, &perm).unwrap();
            assert!(is_unit_interval(&simplex, &o).unwrap().holds());
        }

        // First violating pair under lexicographic scan: facet 124 spans
        // {1..4} and 134 is the first absent subset.
        let ns = build(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[2, 3, 4], &[3, 4, 5]]);
        let check = is_unit_interval(&ns, &VertexOrder::identity(&ns)).unwrap();
        let v = check.violation().expect("not unit interval");
        assert_eq!(v.facet, f(&[1, 2, 4]));
        assert_eq!(v.missing, f(&[1, 3, 4]));
    }

    #[test]
    fn interval_examples() {
        let ns = build(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[2, 3, 4], &[3, 4, 5]]);
        assert!(is_interval(&ns, &VertexOrder::identity(&ns)).unwrap().holds());

        let claw_center_low = build(&[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(is_interval(&claw_center_low, &VertexOrder::identity(&claw_center_low))
            .unwrap()
            .holds());

        // Center labeled last: facet 14 needs 12 first.
        let claw_center_high = build(&[&[1, 4], &[2, 4], &[3, 4]]);
        let check =
            is_interval(&claw_center_high, &VertexOrder::identity(&claw_center_high)).unwrap();
        let v = check.violation().expect("not interval");
        assert_eq!(v.facet, f(&[1, 4]));
        assert_eq!(v.missing, f(&[1, 2]));
    }

    #[test]
    fn semi_closed_examples() {
        let g = build(&[&[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(is_semi_closed(&g, &VertexOrder::identity(&g)).unwrap().holds());
        assert!(!is_interval(&g, &VertexOrder::identity(&g)).unwrap().holds());

        let fig2b = build(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 5]]);
        assert!(is_semi_closed(&fig2b, &VertexOrder::identity(&fig2b)).unwrap().holds());

        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        assert!(is_semi_closed(&c, &VertexOrder::identity(&c)).unwrap().holds());
    }

    #[test]
    fn find_and_count() {
        // Both orders of a single edge are unit interval.
        let edge = build(&[&[1, 2]]);
        assert_eq!(count_orders(&edge, OrderClass::UnitInterval).unwrap(), 2);

        // The matroid example has no semi-closed orders at all.
        let matroid = build(&[&[1, 2, 3], &[1, 2, 5], &[2, 3, 4], &[2, 4, 5]]);
        assert_eq!(count_orders(&matroid, OrderClass::SemiClosed).unwrap(), 0);
        assert!(find_order(&matroid, OrderClass::SemiClosed).unwrap().is_none());

        // The claw admits interval orders but no unit interval order.
        let claw = build(&[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(find_order(&claw, OrderClass::UnitInterval).unwrap().is_none());
        let found = find_order(&claw, OrderClass::Interval).unwrap().expect("claw is interval");
        assert!(is_interval(&claw, &found).unwrap().holds());

        let g = build(&[&[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(count_orders(&g, OrderClass::SemiClosed).unwrap() >= 1);
    }

    #[test]
    fn find_returns_lexicographically_first_assignment() {
        let c = build(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let o = find_order(&c, OrderClass::UnitInterval).unwrap().unwrap();
        // The identity assignment works, so nothing earlier can be returned.
        assert_eq!(o.by_position(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c = complete_graph(7);
        let opts = SearchOpts { budget: Some(10), progress: None };
        match count_orders_with(&c, OrderClass::SemiClosed, &opts) {
            Err(Error::Exhausted { visited }) => assert!(visited > 10),
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    fn complete_graph(n: u32) -> Complex {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push(vec![i, j]);
            }
        }
        Complex::build(&edges).unwrap()
    }
}
