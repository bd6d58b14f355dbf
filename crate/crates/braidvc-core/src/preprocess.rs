//! Polynomial-time reductions: simplicial-vertex elimination and degree-2
//! folding, plus the log machinery that lifts a cover of the reduced graph
//! back to the input graph.
//!
//! Vertices of degree 0 and 1 are vacuously/trivially simplicial and are
//! consumed by the simplicial rule, so folding only ever sees proper
//! degree-2 vertices with non-adjacent neighbors.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{Graph, NbrList, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Foldability {
    /// Merged vertex would have degree <= 3.
    EasilyFoldable,
    /// Merged vertex would have degree exactly 4.
    Foldable,
    /// Merged vertex would have degree >= 5.
    NotFoldable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldRecord {
    pub folded: VertexId,
    pub neighbor_a: VertexId,
    pub neighbor_b: VertexId,
    pub merged: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionEntry {
    SimplicialPick { vertex: VertexId, picked: NbrList },
    Fold(FoldRecord),
}

/// Ordered record of reductions; `budget_spent` is the number of folds plus
/// the total size of all simplicial picks.
#[derive(Debug, Clone, Default)]
pub struct ReductionLog {
    pub entries: Vec<ReductionEntry>,
    pub budget_spent: u64,
}

impl ReductionLog {
    pub fn new() -> ReductionLog {
        ReductionLog::default()
    }

    fn push_pick(&mut self, vertex: VertexId, picked: NbrList) {
        self.budget_spent += picked.len() as u64;
        self.entries
            .push(ReductionEntry::SimplicialPick { vertex, picked });
    }

    fn push_fold(&mut self, rec: FoldRecord) {
        self.budget_spent += 1;
        self.entries.push(ReductionEntry::Fold(rec));
    }
}

/// True iff the neighborhood of `v` induces a clique (vacuously for
/// degree <= 1).
pub fn is_simplicial(g: &Graph, v: VertexId) -> bool {
    let nbrs = g.neighbors(v);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !g.has_edge(a, b) {
                return false;
            }
        }
    }
    true
}

/// Repeatedly removes the lowest-id simplicial vertex, committing its open
/// neighborhood to the cover. Returns the number of committed vertices.
pub fn eliminate_simplicial(g: &mut Graph, log: &mut ReductionLog) -> u64 {
    let mut committed = 0u64;
    'outer: loop {
        for v in 0..g.slots() {
            if g.is_alive(v) && is_simplicial(g, v) {
                let removed = g.remove_closed_neighborhood(v);
                let picked: NbrList = removed[1..].iter().copied().collect();
                committed += picked.len() as u64;
                log.push_pick(v, picked);
                continue 'outer;
            }
        }
        return committed;
    }
}

/// Size of the would-be merged vertex's neighborhood: |(N(u) u N(w)) \ {v}|.
/// Pre: d(v) = 2 with non-adjacent neighbors.
pub fn fold_target_degree(g: &Graph, v: VertexId) -> usize {
    merged_neighbors(g, v).len()
}

pub(crate) fn merged_neighbors(g: &Graph, v: VertexId) -> NbrList {
    debug_assert_eq!(g.degree(v), 2);
    let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    debug_assert!(!g.has_edge(u, w), "fold requires non-adjacent neighbors");
    let mut out: NbrList = NbrList::new();
    for &src in &[u, w] {
        for &x in g.neighbors(src) {
            if x != v {
                if let Err(pos) = out.binary_search(&x) {
                    out.insert(pos, x);
                }
            }
        }
    }
    out
}

pub fn foldability(g: &Graph, v: VertexId) -> Foldability {
    match fold_target_degree(g, v) {
        0..=3 => Foldability::EasilyFoldable,
        4 => Foldability::Foldable,
        _ => Foldability::NotFoldable,
    }
}

/// Folds the degree-2 vertex `v`: removes v and its neighbors, introduces a
/// fresh vertex adjacent to their remaining neighborhood. The budget
/// consumer must subtract 1.
pub fn fold(g: &mut Graph, v: VertexId, log: &mut ReductionLog) -> FoldRecord {
    let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    let target = merged_neighbors(g, v);
    g.remove_vertex(v);
    g.remove_vertex(u);
    g.remove_vertex(w);
    let merged = g.add_vertex(&target);
    let rec = FoldRecord {
        folded: v,
        neighbor_a: u,
        neighbor_b: w,
        merged,
    };
    log.push_fold(rec);
    rec
}

/// Folds easily-foldable vertices (lowest id first) until none remain.
/// Degree-2 vertices with adjacent neighbors are left for the simplicial
/// rule. Returns the number of folds.
pub fn fold_easily_foldable(g: &mut Graph, log: &mut ReductionLog) -> u64 {
    let mut folds = 0u64;
    'outer: loop {
        for v in 0..g.slots() {
            if g.is_alive(v) && g.degree(v) == 2 {
                let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
                if !g.has_edge(u, w) && foldability(g, v) == Foldability::EasilyFoldable {
                    fold(g, v, log);
                    folds += 1;
                    continue 'outer;
                }
            }
        }
        return folds;
    }
}

/// Simplicial elimination to fixpoint, then easily-foldable folds to
/// fixpoint, repeated until neither applies. Returns the budget spent.
pub fn preprocess_to_fixpoint(g: &mut Graph, log: &mut ReductionLog) -> u64 {
    let mut spent = 0u64;
    loop {
        let a = eliminate_simplicial(g, log);
        let b = fold_easily_foldable(g, log);
        spent += a + b;
        if a + b == 0 {
            return spent;
        }
    }
}

/// Replays a reduction log backwards, turning a cover of the reduced graph
/// into a cover of the original graph (size grows by exactly
/// `budget_spent`).
pub fn lift_cover(entries: &[ReductionEntry], cover: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut out = cover.clone();
    for entry in entries.iter().rev() {
        match entry {
            ReductionEntry::SimplicialPick { picked, .. } => {
                out.extend(picked.iter().copied());
            }
            ReductionEntry::Fold(rec) => {
                if out.remove(&rec.merged) {
                    out.insert(rec.neighbor_a);
                    out.insert(rec.neighbor_b);
                } else {
                    out.insert(rec.folded);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_min_vc, is_vertex_cover};

    fn k4() -> Graph {
        Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &e).unwrap()
    }

    #[test]
    fn simplicial_detection() {
        let g = k4();
        assert!(is_simplicial(&g, 0));
        let c4 = cycle(4);
        assert!(!is_simplicial(&c4, 0));
        let iso = Graph::build(1, &[]).unwrap();
        assert!(is_simplicial(&iso, 0));
    }

    #[test]
    fn eliminate_on_k4() {
        let mut g = k4();
        let mut log = ReductionLog::new();
        assert_eq!(eliminate_simplicial(&mut g, &mut log), 3);
        assert_eq!(g.live_count(), 0);
    }

    #[test]
    fn eliminate_triangle_with_pendant() {
        // triangle 0,1,2 plus pendant 3 attached to 0
        let mut g = Graph::build(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let fresh = g.clone();
        let mut log = ReductionLog::new();
        let count = eliminate_simplicial(&mut g, &mut log);
        assert_eq!(count, 2);
        assert_eq!(g.live_count(), 0);
        let lifted = lift_cover(&log.entries, &BTreeSet::new());
        assert!(is_vertex_cover(&fresh, &lifted));
        assert_eq!(lifted.len(), brute_min_vc(&fresh).unwrap().0);
    }

    #[test]
    fn eliminate_leaves_c5_alone() {
        let mut g = cycle(5);
        let mut log = ReductionLog::new();
        assert_eq!(eliminate_simplicial(&mut g, &mut log), 0);
        assert_eq!(g.live_count(), 5);
    }

    #[test]
    fn foldability_classification() {
        let c4 = cycle(4);
        assert_eq!(foldability(&c4, 0), Foldability::EasilyFoldable);

        // v=0 with neighbors 1, 2; each neighbor has 3 private extra
        // neighbors: merged degree 6
        let g = Graph::build(
            9,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (2, 8),
            ],
        )
        .unwrap();
        assert_eq!(foldability(&g, 0), Foldability::NotFoldable);

        // two private extras each: merged degree 4
        let h = Graph::build(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert_eq!(foldability(&h, 0), Foldability::Foldable);
    }

    #[test]
    fn fold_contracts_a_path() {
        // a-u-v-w-b with ids 0-1-2-3-4
        let mut g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut log = ReductionLog::new();
        let rec = fold(&mut g, 2, &mut log);
        assert_eq!(rec.merged, 5);
        assert_eq!(g.degree(rec.merged), 2);
        assert!(g.has_edge(5, 0) && g.has_edge(5, 4));
    }

    #[test]
    fn fold_c4_gives_k2() {
        let mut g = cycle(4);
        let mut log = ReductionLog::new();
        let rec = fold(&mut g, 0, &mut log);
        assert_eq!(g.live_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(rec.merged, 2));
    }

    #[test]
    fn fold_c5_budget_matches_oracle() {
        let fresh = cycle(5);
        let mut g = cycle(5);
        let mut log = ReductionLog::new();
        fold(&mut g, 0, &mut log);
        assert_eq!(g.live_count(), 3);
        assert_eq!(g.edge_count(), 3);
        let before = brute_min_vc(&fresh).unwrap().0;
        let after = brute_min_vc(&g).unwrap().0;
        assert_eq!(before, after + 1);
        // lifting any optimal cover of the triangle covers C5
        let (_, reduced_cover) = brute_min_vc(&g).unwrap();
        let lifted = lift_cover(&log.entries, &reduced_cover);
        assert!(is_vertex_cover(&fresh, &lifted));
        assert_eq!(lifted.len(), before);
    }

    #[test]
    fn lift_examples() {
        // path 0-1-2-3-4 folded at 2 into 5
        let mut g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let fresh = g.clone();
        let mut log = ReductionLog::new();
        fold(&mut g, 2, &mut log);

        let lifted = lift_cover(&log.entries, &BTreeSet::from([5]));
        assert_eq!(lifted, BTreeSet::from([1, 3]));
        assert!(is_vertex_cover(&fresh, &lifted));

        let lifted = lift_cover(&log.entries, &BTreeSet::from([0, 4]));
        assert_eq!(lifted, BTreeSet::from([0, 2, 4]));
        assert!(is_vertex_cover(&fresh, &lifted));
    }

    #[test]
    fn preprocess_c5_folds_to_nothing() {
        // C5: fold once to a triangle, then the triangle is simplicial
        let mut g = cycle(5);
        let fresh = g.clone();
        let mut log = ReductionLog::new();
        let spent = preprocess_to_fixpoint(&mut g, &mut log);
        assert_eq!(g.live_count(), 0);
        assert_eq!(spent as usize, brute_min_vc(&fresh).unwrap().0);
        let lifted = lift_cover(&log.entries, &BTreeSet::new());
        assert!(is_vertex_cover(&fresh, &lifted));
    }
}
