//! Vertex decomposability, shedding orders, and shelling completion.
//!
//! A pure complex is vertex decomposable when it is a simplex or `{∅}`, or
//! some vertex `v` has vertex-decomposable link and deletion and every facet
//! of the deletion is a facet of the complex. Certificates record the
//! recursion; they convert to shellings, and shellings of small complexes
//! extend to shellings of the full skeleton by backtracking.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{complete_skeleton, Complex};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::search::{Counter, LocalTicks, SearchOpts};
use crate::shelling::{is_shelling, shelling_step_ok, FacetSequence, ShellingOutcome};

/// Recursive witness of vertex decomposability.
#[derive(Clone, Debug)]
pub enum SheddingCertificate {
    /// The complex is a single nonempty facet.
    Simplex,
    /// The complex is `{∅}`.
    EmptyFaceOnly,
    Shed {
        vertex: Vertex,
        link: Arc<SheddingCertificate>,
        deletion: Arc<SheddingCertificate>,
    },
}

impl std::fmt::Display for SheddingCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SheddingCertificate::Simplex => write!(f, "simplex"),
            SheddingCertificate::EmptyFaceOnly => write!(f, "{{empty}}"),
            SheddingCertificate::Shed { vertex, link, deletion } => {
                write!(f, "shed {vertex} (link: {link}) (del: {deletion})")
            }
        }
    }
}

/// Whether every facet of the deletion of `v` is a facet of `c`.
pub fn is_shedding_vertex(c: &Complex, v: Vertex) -> Result<bool> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let del = c.deletion(v)?;
    Ok(del.facets().iter().all(|f| c.has_facet(*f)))
}

type Memo = HashMap<Vec<Face>, Option<Arc<SheddingCertificate>>>;

fn vd_recursive(c: &Complex, memo: &mut Memo) -> Option<Arc<SheddingCertificate>> {
    if c.is_empty_face_only() {
        return Some(Arc::new(SheddingCertificate::EmptyFaceOnly));
    }
    if c.is_simplex() {
        return Some(Arc::new(SheddingCertificate::Simplex));
    }
    let key = c.facets().to_vec();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut result = None;
    for v in c.vertex_set().vertices() {
        let del = c.deletion(v).expect("v is in the vertex set");
        if !del.facets().iter().all(|f| c.has_facet(*f)) {
            continue;
        }
        let link = c.link(v).expect("v is in the vertex set");
        // The definition only speaks of pure complexes; an impure link or
        // deletion disqualifies the vertex.
        if !link.is_pure() || !del.is_pure() {
            continue;
        }
        let Some(link_cert) = vd_recursive(&link, memo) else { continue };
        let Some(del_cert) = vd_recursive(&del, memo) else { continue };
        result = Some(Arc::new(SheddingCertificate::Shed {
            vertex: v,
            link: link_cert,
            deletion: del_cert,
        }));
        break;
    }
    memo.insert(key, result.clone());
    result
}

/// Searches for a shedding certificate, trying vertices in increasing label
/// order; results are memoized on the exact facet set.
pub fn is_vertex_decomposable(c: &Complex) -> Result<Option<SheddingCertificate>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let mut memo = Memo::new();
    Ok(vd_recursive(c, &mut memo).map(|arc| (*arc).clone()))
}

/// Checks a shedding order: each vertex must shed in the successive
/// deletions, with a vertex-decomposable (pure) link at every stage, and the
/// final residue must be a simplex or `{∅}`.
pub fn verify_shedding_order(c: &Complex, vs: &[Vertex]) -> Result<bool> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let mut seen = Face::EMPTY;
    for &v in vs {
        if !c.vertex_set().contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        if seen.contains(v) {
            return Err(Error::Duplicate(v));
        }
        seen = seen.insert(v);
    }
    let mut memo = Memo::new();
    let mut cur = c.clone();
    for &v in vs {
        if !cur.vertex_set().contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let del = cur.deletion(v)?;
        if !del.facets().iter().all(|f| cur.has_facet(*f)) {
            return Ok(false);
        }
        let link = cur.link(v)?;
        if !link.is_pure() || vd_recursive(&link, &mut memo).is_none() {
            return Ok(false);
        }
        cur = del;
    }
    Ok(cur.is_simplex() || cur.is_empty_face_only())
}

/// Unfolds a certificate into a shelling: the shelling of the deletion,
/// followed by `shed ∪ G` for each facet `G` in the shelling of the link.
pub fn certificate_to_shelling(c: &Complex, cert: &SheddingCertificate) -> Result<FacetSequence> {
    fn rec(c: &Complex, cert: &SheddingCertificate, out: &mut Vec<Face>) -> Result<()> {
        match cert {
            SheddingCertificate::Simplex => {
                if !c.is_simplex() {
                    return Err(Error::InvalidCertificate);
                }
                out.push(c.facets()[0]);
                Ok(())
            }
            SheddingCertificate::EmptyFaceOnly => {
                if !c.is_empty_face_only() {
                    return Err(Error::InvalidCertificate);
                }
                out.push(Face::EMPTY);
                Ok(())
            }
            SheddingCertificate::Shed { vertex, link, deletion } => {
                let v = *vertex;
                if !c.vertex_set().contains(v) {
                    return Err(Error::InvalidCertificate);
                }
                let del = c.deletion(v).expect("vertex checked");
                if !del.facets().iter().all(|f| c.has_facet(*f)) {
                    return Err(Error::InvalidCertificate);
                }
                let lk = c.link(v).expect("vertex checked");
                rec(&del, deletion, out)?;
                let mark = out.len();
                rec(&lk, link, out)?;
                for face in &mut out[mark..] {
                    *face = face.insert(v);
                }
                Ok(())
            }
        }
    }
    let mut out = Vec::with_capacity(c.facet_count());
    rec(c, cert, &mut out)?;
    let seq = FacetSequence::new(out);
    seq.validate_for(c).map_err(|_| Error::InvalidCertificate)?;
    Ok(seq)
}

/// Extends a shelling of `c` to a shelling of the full `d`-skeleton of the
/// simplex on `{1, …, n}`, by backtracking over the remaining facets in
/// lexicographic order. Returns the full skeleton shelling (prefix
/// included), or None if this particular prefix does not complete.
pub fn complete_shelling(c: &Complex, seq: &FacetSequence, n: u32) -> Result<Option<FacetSequence>> {
    complete_shelling_with(c, seq, n, &SearchOpts::default())
}

pub fn complete_shelling_with(
    c: &Complex,
    seq: &FacetSequence,
    n: u32,
    opts: &SearchOpts,
) -> Result<Option<FacetSequence>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    match is_shelling(c, seq)? {
        ShellingOutcome::Shelling(_) => {}
        ShellingOutcome::NotShelling(_) => return Err(Error::NotAShelling),
    }
    let remaining = skeleton_remainder(c, n)?;
    let counter = Counter::new(*opts);
    let mut ticks = LocalTicks::new();
    let mut chosen = seq.facets().to_vec();
    let target = chosen.len() + remaining.len();
    let mut used = vec![false; remaining.len()];
    match dfs_complete(&remaining, &mut used, &mut chosen, target, &counter, &mut ticks) {
        Some(true) => Ok(Some(FacetSequence::new(chosen))),
        Some(false) => Ok(None),
        None => Err(Error::Exhausted { visited: counter.visited() }),
    }
}

/// Facets of the full skeleton on `{1..n}` that are not facets of `c`.
fn skeleton_remainder(c: &Complex, n: u32) -> Result<Vec<Face>> {
    let universe = Face::new(&(1..=n).collect::<Vec<_>>())?;
    if !c.vertex_set().is_subset_of(universe) {
        return Err(Error::UniverseMismatch(n));
    }
    let d = c.dimension();
    debug_assert!(d >= 0, "pure complexes below dimension 0 cannot complete");
    let skel = complete_skeleton(n, d as u32)?;
    Ok(skel.facets().iter().copied().filter(|f| !c.has_facet(*f)).collect())
}

fn dfs_complete(
    remaining: &[Face],
    used: &mut [bool],
    chosen: &mut Vec<Face>,
    target: usize,
    counter: &Counter,
    ticks: &mut LocalTicks,
) -> Option<bool> {
    if chosen.len() == target {
        return Some(true);
    }
    for i in 0..remaining.len() {
        if used[i] {
            continue;
        }
        if !ticks.tick(counter) {
            return None;
        }
        if shelling_step_ok(remaining[i], chosen) {
            used[i] = true;
            chosen.push(remaining[i]);
            match dfs_complete(remaining, used, chosen, target, counter, ticks) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            chosen.pop();
            used[i] = false;
        }
    }
    Some(false)
}

/// Searches for any shelling of `c` that extends to the full skeleton on
/// `{1, …, n}`: one backtracking pass places all facets of `c` first (in
/// every shelling order, lexicographically explored) and the remaining
/// skeleton facets after. Returns the pair (shelling of `c`, full skeleton
/// shelling), None if no shelling of `c` completes, or `Exhausted` when the
/// node budget runs out.
pub fn is_shelling_completable(
    c: &Complex,
    n: u32,
) -> Result<Option<(FacetSequence, FacetSequence)>> {
    is_shelling_completable_with(c, n, &SearchOpts::default())
}

pub fn is_shelling_completable_with(
    c: &Complex,
    n: u32,
    opts: &SearchOpts,
) -> Result<Option<(FacetSequence, FacetSequence)>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let remaining = skeleton_remainder(c, n)?;
    let m = c.facet_count();
    let counter = Counter::new(*opts);
    let mut ticks = LocalTicks::new();
    let mut chosen: Vec<Face> = Vec::with_capacity(m + remaining.len());
    let mut used_own = vec![false; m];
    let mut used_rest = vec![false; remaining.len()];
    let found = dfs_completable(
        c.facets(),
        &remaining,
        &mut used_own,
        &mut used_rest,
        &mut chosen,
        &counter,
        &mut ticks,
    );
    match found {
        Some(true) => {
            let own = FacetSequence::new(chosen[..m].to_vec());
            let full = FacetSequence::new(chosen);
            Ok(Some((own, full)))
        }
        Some(false) => Ok(None),
        None => Err(Error::Exhausted { visited: counter.visited() }),
    }
}

fn dfs_completable(
    own: &[Face],
    remaining: &[Face],
    used_own: &mut [bool],
    used_rest: &mut [bool],
    chosen: &mut Vec<Face>,
    counter: &Counter,
    ticks: &mut LocalTicks,
) -> Option<bool> {
    let depth = chosen.len();
    if depth == own.len() + remaining.len() {
        return Some(true);
    }
    // All facets of the complex first, then the remainder of the skeleton.
    let own_phase = depth < own.len();
    let pool: &[Face] = if own_phase { own } else { remaining };
    for i in 0..pool.len() {
        if if own_phase { used_own[i] } else { used_rest[i] } {
            continue;
        }
        if !ticks.tick(counter) {
            return None;
        }
        if chosen.is_empty() || shelling_step_ok(pool[i], chosen) {
            if own_phase {
                used_own[i] = true;
            } else {
                used_rest[i] = true;
            }
            chosen.push(pool[i]);
            let sub = dfs_completable(own, remaining, used_own, used_rest, chosen, counter, ticks);
            match sub {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            chosen.pop();
            if own_phase {
                used_own[i] = false;
            } else {
                used_rest[i] = false;
            }
        }
    }
    Some(false)
}
