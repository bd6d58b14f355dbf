//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, O(V^3)). The reduction pipeline only needs a perfect matching
//! of a cubic bridgeless graph, which exists by Petersen's theorem; any
//! exact procedure qualifies.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};

const NONE: u32 = u32::MAX;

/// `mate[v] == Some(u)` iff edge (v, u) is in the matching. Dead slots map
/// to None.
pub fn maximum_matching(g: &Graph) -> Vec<Option<VertexId>> {
    let n = g.slots() as usize;
    let mut m = Matcher {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: vec![0; n],
        in_queue: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for v in g.live_vertices() {
        if m.mate[v as usize] == NONE {
            m.augment_from(v);
        }
    }
    m.mate
        .iter()
        .map(|&x| if x == NONE { None } else { Some(x) })
        .collect()
}

/// A perfect matching as an edge list, or None when the graph has none.
pub fn perfect_matching(g: &Graph) -> Option<Vec<(VertexId, VertexId)>> {
    let mate = maximum_matching(g);
    let mut out = Vec::new();
    for v in g.live_vertices() {
        match mate[v as usize] {
            Some(u) if v < u => out.push((v, u)),
            Some(_) => {}
            None => return None,
        }
    }
    Some(out)
}

struct Matcher<'a> {
    g: &'a Graph,
    mate: Vec<u32>,
    parent: Vec<u32>,
    base: Vec<u32>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<u32>,
}

impl Matcher<'_> {
    fn augment_from(&mut self, root: u32) -> bool {
        let n = self.mate.len();
        for i in 0..n {
            self.parent[i] = NONE;
            self.base[i] = i as u32;
            self.in_queue[i] = false;
        }
        self.queue.clear();
        self.push(root);
        while let Some(v) = self.queue.pop_front() {
            for &u in self.g.neighbors(v) {
                if self.base[v as usize] == self.base[u as usize] || self.mate[v as usize] == u {
                    continue;
                }
                if u == root
                    || (self.mate[u as usize] != NONE
                        && self.parent[self.mate[u as usize] as usize] != NONE)
                {
                    // odd cycle through the root: contract the blossom
                    self.contract(v, u);
                } else if self.parent[u as usize] == NONE {
                    self.parent[u as usize] = v;
                    if self.mate[u as usize] == NONE {
                        self.apply_augmenting_path(u);
                        return true;
                    }
                    self.push(self.mate[u as usize]);
                }
            }
        }
        false
    }

    fn push(&mut self, v: u32) {
        if !self.in_queue[v as usize] {
            self.in_queue[v as usize] = true;
            self.queue.push_back(v);
        }
    }

    fn lowest_common_ancestor(&self, mut a: u32, mut b: u32) -> u32 {
        let n = self.mate.len();
        let mut seen = vec![false; n];
        loop {
            a = self.base[a as usize];
            seen[a as usize] = true;
            if self.mate[a as usize] == NONE {
                break;
            }
            a = self.parent[self.mate[a as usize] as usize];
        }
        loop {
            b = self.base[b as usize];
            if seen[b as usize] {
                return b;
            }
            b = self.parent[self.mate[b as usize] as usize];
        }
    }

    fn mark_path(&mut self, mut v: u32, lca: u32, mut child: u32) {
        while self.base[v as usize] != lca {
            let mv = self.mate[v as usize];
            self.in_blossom[self.base[v as usize] as usize] = true;
            self.in_blossom[self.base[mv as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = mv;
            v = self.parent[mv as usize];
        }
    }

    fn contract(&mut self, v: u32, u: u32) {
        let n = self.mate.len();
        let lca = self.lowest_common_ancestor(v, u);
        for i in 0..n {
            self.in_blossom[i] = false;
        }
        self.mark_path(v, lca, u);
        self.mark_path(u, lca, v);
        for i in 0..n as u32 {
            if self.in_blossom[self.base[i as usize] as usize] {
                self.base[i as usize] = lca;
                self.push(i);
            }
        }
    }

    fn apply_augmenting_path(&mut self, mut u: u32) {
        while u != NONE {
            let v = self.parent[u as usize];
            let next = self.mate[v as usize];
            self.mate[v as usize] = u;
            self.mate[u as usize] = v;
            u = next;
        }
    }
}
