//! Brute-force ground truth for minimum vertex cover and minimum slab
//! hitting set on small instances. Deliberately naive; every nontrivial
//! component of this crate is tested against it.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, VertexId};
use crate::slabs::PointSet;

pub const DEFAULT_VC_LIMIT: u32 = 26;
pub const DEFAULT_HITTING_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { size: usize, limit: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { size, limit } => {
                write!(
                    f,
                    "instance size {} exceeds the oracle limit {}",
                    size, limit
                )
            }
        }
    }
}

pub fn is_vertex_cover(g: &Graph, cover: &BTreeSet<VertexId>) -> bool {
    g.edge_list()
        .iter()
        .all(|&(u, v)| cover.contains(&u) || cover.contains(&v))
}

/// Minimum vertex cover as the complement of a maximum independent set,
/// found by exhaustive branching. Exact for any input; refuses instances
/// above `limit` live vertices.
pub fn brute_min_vc_capped(
    g: &Graph,
    limit: u32,
) -> Result<(usize, BTreeSet<VertexId>), OracleError> {
    if g.live_count() > limit {
        return Err(OracleError::TooLarge {
            size: g.live_count() as usize,
            limit: limit as usize,
        });
    }
    let mut work = g.clone();
    let live: BTreeSet<VertexId> = work.live_vertices().collect();
    let mut best: Vec<VertexId> = Vec::new();
    let mut current: Vec<VertexId> = Vec::new();
    mis_branch(&mut work, &mut current, &mut best);
    let mis: BTreeSet<VertexId> = best.into_iter().collect();
    let cover: BTreeSet<VertexId> = live.difference(&mis).copied().collect();
    Ok((cover.len(), cover))
}

pub fn brute_min_vc(g: &Graph) -> Result<(usize, BTreeSet<VertexId>), OracleError> {
    brute_min_vc_capped(g, DEFAULT_VC_LIMIT)
}

fn mis_branch(g: &mut Graph, current: &mut Vec<VertexId>, best: &mut Vec<VertexId>) {
    // greedy: a vertex of degree <= 1 is always safe to take
    let cp = g.checkpoint();
    let taken = current.len();
    loop {
        let mut low = None;
        for v in g.live_vertices() {
            if g.degree(v) <= 1 {
                low = Some(v);
                break;
            }
        }
        match low {
            Some(v) => {
                current.push(v);
                g.remove_closed_neighborhood(v);
            }
            None => break,
        }
    }
    if g.live_count() == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
    } else {
        // all remaining degrees >= 2: branch on a max-degree vertex
        let v = g
            .live_vertices()
            .max_by_key(|&v| (g.degree(v), core::cmp::Reverse(v)))
            .expect("nonempty");
        let inner = g.checkpoint();
        // v in the independent set
        current.push(v);
        g.remove_closed_neighborhood(v);
        mis_branch(g, current, best);
        current.pop();
        g.rollback(inner);
        // v not in the independent set
        g.remove_vertex(v);
        mis_branch(g, current, best);
    }
    g.rollback(cp);
    current.truncate(taken);
}

/// Subset-enumeration oracle, independent of the branching one; intended as
/// a cross-check on very small graphs (n <= 20).
pub fn brute_min_vc_enum(g: &Graph) -> Result<(usize, BTreeSet<VertexId>), OracleError> {
    let live: Vec<VertexId> = g.live_vertices().collect();
    let n = live.len();
    if n > 20 {
        return Err(OracleError::TooLarge { size: n, limit: 20 });
    }
    let edge_masks = edge_masks(g, &live);
    let mut best: Option<u64> = None;
    for mask in 0u64..(1u64 << n) {
        if covers(mask, &edge_masks) {
            let better = match best {
                Some(b) => mask.count_ones() < b.count_ones(),
                None => true,
            };
            if better {
                best = Some(mask);
            }
        }
    }
    let mask = best.expect("the full vertex set always covers");
    let cover: BTreeSet<VertexId> = live
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    Ok((cover.len(), cover))
}

/// Every minimum vertex cover, by exhaustive enumeration (n <= 16).
pub fn all_min_covers(g: &Graph) -> Result<Vec<BTreeSet<VertexId>>, OracleError> {
    let live: Vec<VertexId> = g.live_vertices().collect();
    let n = live.len();
    if n > 16 {
        return Err(OracleError::TooLarge { size: n, limit: 16 });
    }
    let edge_masks = edge_masks(g, &live);
    let mut best = u32::MAX;
    for mask in 0u64..(1u64 << n) {
        if covers(mask, &edge_masks) {
            best = best.min(mask.count_ones());
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() == best && covers(mask, &edge_masks) {
            out.push(
                live.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    Ok(out)
}

fn edge_masks(g: &Graph, live: &[VertexId]) -> Vec<u64> {
    let index = |v: VertexId| live.binary_search(&v).expect("live vertex") as u32;
    g.edge_list()
        .iter()
        .map(|&(u, v)| (1u64 << index(u)) | (1u64 << index(v)))
        .collect()
}

fn covers(mask: u64, edge_masks: &[u64]) -> bool {
    edge_masks.iter().all(|&e| mask & e != 0)
}

/// Minimum vertex cover subject to `forced_in` (must be picked) and
/// `forced_out` (must not be picked). Returns None when the constraints are
/// unsatisfiable (two forced-out endpoints of one edge).
pub fn brute_min_vc_constrained(
    g: &Graph,
    forced_in: &[VertexId],
    forced_out: &[VertexId],
) -> Result<Option<(usize, BTreeSet<VertexId>)>, OracleError> {
    for &u in forced_out {
        if forced_in.contains(&u) {
            return Ok(None);
        }
        for &v in forced_out {
            if u < v && g.has_edge(u, v) {
                return Ok(None);
            }
        }
    }
    let mut work = g.clone();
    let mut picked: BTreeSet<VertexId> = BTreeSet::new();
    for &v in forced_in {
        if work.is_alive(v) {
            picked.insert(v);
            work.remove_vertex(v);
        }
    }
    for &v in forced_out {
        if work.is_alive(v) {
            for &u in &work.remove_closed_neighborhood(v)[1..] {
                picked.insert(u);
            }
        }
    }
    let (_, rest) = brute_min_vc(&work)?;
    picked.extend(rest);
    Ok(Some((picked.len(), picked)))
}

/// Minimum set of input points hitting every induced axis-parallel slab.
/// Enumerates all 2*C(n,2) slabs, then all point subsets in increasing size.
pub fn brute_min_hitting(points: &PointSet) -> Result<(usize, BTreeSet<usize>), OracleError> {
    brute_min_hitting_capped(points, DEFAULT_HITTING_LIMIT)
}

pub fn brute_min_hitting_capped(
    points: &PointSet,
    limit: usize,
) -> Result<(usize, BTreeSet<usize>), OracleError> {
    let n = points.len();
    if n > limit {
        return Err(OracleError::TooLarge { size: n, limit });
    }
    // membership bitmask per distinct slab
    let mut slab_masks: Vec<u32> = points
        .all_slabs()
        .iter()
        .map(|s| {
            let mut m = 0u32;
            for i in 0..n {
                if s.contains(points.point(i)) {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    slab_masks.sort_unstable();
    slab_masks.dedup();
    for size in 0..=n {
        let mut found = None;
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize == size && slab_masks.iter().all(|&s| s & mask != 0) {
                found = Some(mask);
                break;
            }
        }
        if let Some(mask) = found {
            let set = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            return Ok((size, set));
        }
    }
    unreachable!("the full point set hits every induced slab")
}
