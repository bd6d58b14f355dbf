//! Mutable simple graph with journaled, rollback-capable deletions.
//!
//! Every mutation is recorded on a journal stack so the branching search can
//! checkpoint, explore a subtree, and restore the exact previous state in
//! O(changes). Vertices are never reused: folding appends fresh ids past the
//! original range.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use smallvec::SmallVec;

pub type VertexId = u32;

/// Neighbor list; degree is at most 4 throughout the algorithm, folds can
/// briefly exceed that only in permissive mode.
pub type NbrList = SmallVec<[VertexId; 4]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    OutOfRange { edge: (VertexId, VertexId), n: u32 },
    SelfLoop { vertex: VertexId },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::OutOfRange { edge, n } => {
                write!(
                    f,
                    "edge ({}, {}) has an endpoint outside [0, {})",
                    edge.0, edge.1, n
                )
            }
            BuildError::SelfLoop { vertex } => write!(f, "self-loop at vertex {}", vertex),
        }
    }
}

#[derive(Debug, Clone)]
enum JournalEntry {
    /// `v` was detached from the graph together with its incident edges.
    Removed { v: VertexId, nbrs: NbrList },
    /// `v` was freshly created (by folding); undo pops it again.
    Added { v: VertexId },
}

/// Token for [`Graph::rollback`]. Tokens are only valid on the graph that
/// issued them and must be consumed in LIFO order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    journal_len: usize,
    slots: usize,
}

#[derive(Clone)]
pub struct Graph {
    adj: Vec<NbrList>,
    alive: Vec<bool>,
    live: u32,
    edges: u64,
    journal: Vec<JournalEntry>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from an edge list. Duplicate edges
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn build(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Graph, BuildError> {
        let mut g = Graph {
            adj: vec![NbrList::new(); n as usize],
            alive: vec![true; n as usize],
            live: n,
            edges: 0,
            journal: Vec::new(),
        };
        for &(u, v) in edges {
            if u == v {
                return Err(BuildError::SelfLoop { vertex: u });
            }
            if u >= n || v >= n {
                return Err(BuildError::OutOfRange { edge: (u, v), n });
            }
            g.insert_half(u, v);
            g.insert_half(v, u);
        }
        g.edges = g.adj.iter().map(|l| l.len() as u64).sum::<u64>() / 2;
        Ok(g)
    }

    fn insert_half(&mut self, u: VertexId, v: VertexId) {
        let list = &mut self.adj[u as usize];
        if let Err(pos) = list.binary_search(&v) {
            list.insert(pos, v);
        }
    }

    fn remove_half(&mut self, u: VertexId, v: VertexId) {
        let list = &mut self.adj[u as usize];
        if let Ok(pos) = list.binary_search(&v) {
            list.remove(pos);
        }
    }

    /// Total id slots ever allocated (live or not).
    pub fn slots(&self) -> u32 {
        self.adj.len() as u32
    }

    pub fn live_count(&self) -> u32 {
        self.live
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        (v as usize) < self.alive.len() && self.alive[v as usize]
    }

    /// Sorted list of live neighbors of a live vertex.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        debug_assert!(self.is_alive(v));
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        debug_assert!(self.is_alive(v));
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.is_alive(u) && self.is_alive(v) && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len() as u32).filter(move |&v| self.alive[v as usize])
    }

    pub fn max_degree(&self) -> usize {
        self.live_vertices()
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// True when every live vertex has degree exactly `d` (vacuously false on
    /// an empty graph).
    pub fn is_regular(&self, d: usize) -> bool {
        self.live > 0 && self.live_vertices().all(|v| self.degree(v) == d)
    }

    /// Detaches `v` and its incident edges, journaling the change.
    pub fn remove_vertex(&mut self, v: VertexId) {
        debug_assert!(self.is_alive(v), "remove_vertex on dead vertex {}", v);
        let nbrs = core::mem::take(&mut self.adj[v as usize]);
        for &u in &nbrs {
            self.remove_half(u, v);
        }
        self.edges -= nbrs.len() as u64;
        self.alive[v as usize] = false;
        self.live -= 1;
        self.journal.push(JournalEntry::Removed { v, nbrs });
    }

    /// Removes `v` together with all its neighbors; returns the closed
    /// neighborhood with `v` first.
    pub fn remove_closed_neighborhood(&mut self, v: VertexId) -> NbrList {
        debug_assert!(self.is_alive(v));
        let mut removed: NbrList = SmallVec::new();
        removed.push(v);
        removed.extend_from_slice(&self.adj[v as usize].clone());
        for &w in &removed {
            self.remove_vertex(w);
        }
        removed
    }

    /// Creates a fresh vertex adjacent to `nbrs` (all live, self excluded,
    /// duplicates collapse). Returns the new id.
    pub fn add_vertex(&mut self, nbrs: &[VertexId]) -> VertexId {
        let v = self.adj.len() as VertexId;
        let mut list: NbrList = SmallVec::new();
        for &u in nbrs {
            debug_assert!(self.is_alive(u));
            if let Err(pos) = list.binary_search(&u) {
                list.insert(pos, u);
            }
        }
        for &u in &list {
            self.insert_half(u, v);
        }
        self.edges += list.len() as u64;
        self.adj.push(list);
        self.alive.push(true);
        self.live += 1;
        self.journal.push(JournalEntry::Added { v });
        v
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            journal_len: self.journal.len(),
            slots: self.adj.len(),
        }
    }

    /// Replays the journal backwards to the checkpoint. Panics on a stale or
    /// foreign token.
    pub fn rollback(&mut self, cp: Checkpoint) {
        assert!(
            cp.journal_len <= self.journal.len() && cp.slots <= self.adj.len(),
            "rollback past a stale or foreign checkpoint"
        );
        while self.journal.len() > cp.journal_len {
            match self.journal.pop().unwrap() {
                JournalEntry::Removed { v, nbrs } => {
                    self.edges += nbrs.len() as u64;
                    for &u in &nbrs {
                        self.insert_half(u, v);
                    }
                    self.adj[v as usize] = nbrs;
                    self.alive[v as usize] = true;
                    self.live += 1;
                }
                JournalEntry::Added { v } => {
                    debug_assert_eq!(v as usize, self.adj.len() - 1);
                    let list = self.adj.pop().unwrap();
                    for &u in &list {
                        self.remove_half(u, v);
                    }
                    self.edges -= list.len() as u64;
                    self.alive.pop();
                    self.live -= 1;
                }
            }
        }
        debug_assert_eq!(self.adj.len(), cp.slots);
    }

    /// Live edges as sorted (u, v) pairs with u < v.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edges as usize);
        for v in self.live_vertices() {
            for &u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Connected components of the live subgraph, each sorted ascending;
    /// components ordered by (size, smallest vertex).
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.adj.len()];
        let mut comps = Vec::new();
        for start in self.live_vertices() {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| (c.len(), c[0]));
        comps
    }

    /// True when some live edge is a bridge (removal disconnects its
    /// component). Iterative lowpoint computation.
    pub fn has_bridge(&self) -> bool {
        let n = self.adj.len();
        let mut disc = vec![0u32; n];
        let mut low = vec![0u32; n];
        let mut visited = vec![false; n];
        let mut timer = 1u32;
        for root in self.live_vertices() {
            if visited[root as usize] {
                continue;
            }
            // stack of (vertex, parent, next neighbor index)
            let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(root, u32::MAX, 0)];
            visited[root as usize] = true;
            disc[root as usize] = timer;
            low[root as usize] = timer;
            timer += 1;
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.degree(v) {
                    let u = self.neighbors(v)[*idx];
                    *idx += 1;
                    if !visited[u as usize] {
                        visited[u as usize] = true;
                        disc[u as usize] = timer;
                        low[u as usize] = timer;
                        timer += 1;
                        stack.push((u, v, 0));
                    } else if u != parent {
                        low[v as usize] = low[v as usize].min(disc[u as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p as usize] = low[p as usize].min(low[v as usize]);
                        if low[v as usize] > disc[p as usize] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Structural equality of the live subgraphs (used by rollback tests).
    pub fn same_live_graph(&self, other: &Graph) -> bool {
        self.live == other.live
            && self.edges == other.edges
            && self.adj.len() == other.adj.len()
            && (0..self.adj.len()).all(|i| {
                self.alive[i] == other.alive[i] && (!self.alive[i] || self.adj[i] == other.adj[i])
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n_live={}, m={}, slots={})",
            self.live,
            self.edges,
            self.adj.len()
        )
    }
}
