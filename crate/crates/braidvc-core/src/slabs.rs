//! Points in general position, their induced axis-parallel slabs, and the
//! two-way correspondence with braid graphs (graphs covered by two
//! Hamiltonian paths).
//!
//! Coordinates are exact integers. Callers that accept decimal input are
//! expected to scale it to integers before constructing a [`PointSet`]; order
//! comparisons and closed-interval membership are invariant under that
//! scaling.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, VertexId};

pub type Coord = i128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSetError {
    /// Two points share an x or y coordinate; the reduction is undefined.
    DuplicateCoordinate { axis: Axis, a: usize, b: usize },
}

impl fmt::Display for PointSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSetError::DuplicateCoordinate { axis, a, b } => write!(
                f,
                "points {} and {} share their {} coordinate",
                a,
                b,
                match axis {
                    Axis::Vertical => "x",
                    Axis::Horizontal => "y",
                }
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    /// Slab of the form [x1, x2] x (-inf, +inf).
    Vertical,
    /// Slab of the form (-inf, +inf) x [y1, y2].
    Horizontal,
}

/// Closed slab induced by a pair of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slab {
    pub axis: Axis,
    pub lo: Coord,
    pub hi: Coord,
}

impl Slab {
    pub fn contains(&self, p: (Coord, Coord)) -> bool {
        let c = match self.axis {
            Axis::Vertical => p.0,
            Axis::Horizontal => p.1,
        };
        self.lo <= c && c <= self.hi
    }
}

/// Planar points with pairwise distinct x and pairwise distinct y
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(Coord, Coord)>,
}

impl PointSet {
    pub fn new(points: Vec<(Coord, Coord)>) -> Result<PointSet, PointSetError> {
        for axis in [Axis::Vertical, Axis::Horizontal] {
            let mut order: Vec<usize> = (0..points.len()).collect();
            let key = |i: usize| match axis {
                Axis::Vertical => points[i].0,
                Axis::Horizontal => points[i].1,
            };
            order.sort_by_key(|&i| key(i));
            for w in order.windows(2) {
                if key(w[0]) == key(w[1]) {
                    let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                    return Err(PointSetError::DuplicateCoordinate { axis, a, b });
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (Coord, Coord) {
        self.points[i]
    }

    pub fn points(&self) -> &[(Coord, Coord)] {
        &self.points
    }

    /// Point indices sorted by the given axis coordinate.
    pub fn order_by(&self, axis: Axis) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        match axis {
            Axis::Vertical => order.sort_by_key(|&i| self.points[i].0),
            Axis::Horizontal => order.sort_by_key(|&i| self.points[i].1),
        }
        order
    }

    /// All 2*C(n,2) induced slabs.
    pub fn all_slabs(&self) -> Vec<Slab> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                let (xi, yi) = self.points[i];
                let (xj, yj) = self.points[j];
                out.push(Slab {
                    axis: Axis::Vertical,
                    lo: xi.min(xj),
                    hi: xi.max(xj),
                });
                out.push(Slab {
                    axis: Axis::Horizontal,
                    lo: yi.min(yj),
                    hi: yi.max(yj),
                });
            }
        }
        out
    }

    /// The 2*(n-1) slabs induced by coordinate-consecutive pairs.
    pub fn consecutive_slabs(&self) -> Vec<Slab> {
        let mut out = Vec::new();
        for axis in [Axis::Vertical, Axis::Horizontal] {
            let order = self.order_by(axis);
            for w in order.windows(2) {
                let key = |i: usize| match axis {
                    Axis::Vertical => self.points[i].0,
                    Axis::Horizontal => self.points[i].1,
                };
                out.push(Slab {
                    axis,
                    lo: key(w[0]),
                    hi: key(w[1]),
                });
            }
        }
        out
    }

    /// True when every slab in `slabs` contains a point indexed by `hitters`.
    pub fn hits_all(&self, hitters: &[usize], slabs: &[Slab]) -> bool {
        slabs
            .iter()
            .all(|s| hitters.iter().any(|&i| s.contains(self.points[i])))
    }
}

/// A graph given as two Hamiltonian paths over the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidGraph {
    sigma: Vec<VertexId>,
    tau: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    NotAPermutation {
        which: &'static str,
        len: usize,
        expected: usize,
    },
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::NotAPermutation {
                which,
                len,
                expected,
            } => {
                write!(
                    f,
                    "{} is not a permutation of 0..{} (length {})",
                    which, expected, len
                )
            }
        }
    }
}

fn check_permutation(p: &[VertexId], n: usize, which: &'static str) -> Result<(), BraidError> {
    let mut seen = alloc::vec![false; n];
    let bad = || BraidError::NotAPermutation {
        which,
        len: p.len(),
        expected: n,
    };
    if p.len() != n {
        return Err(bad());
    }
    for &v in p {
        if v as usize >= n || seen[v as usize] {
            return Err(bad());
        }
        seen[v as usize] = true;
    }
    Ok(())
}

impl BraidGraph {
    pub fn new(sigma: Vec<VertexId>, tau: Vec<VertexId>) -> Result<BraidGraph, BraidError> {
        let n = sigma.len();
        check_permutation(&sigma, n, "sigma")?;
        check_permutation(&tau, n, "tau")?;
        Ok(BraidGraph { sigma, tau })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[VertexId] {
        &self.sigma
    }

    pub fn tau(&self) -> &[VertexId] {
        &self.tau
    }

    /// De-duplicated union of the two path edge sets.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<(VertexId, VertexId)> = Vec::new();
        for path in [&self.sigma, &self.tau] {
            for w in path.windows(2) {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                out.push((a, b));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_graph(&self) -> Graph {
        Graph::build(self.n() as u32, &self.edges()).expect("braid edges are valid by construction")
    }
}

/// Sorts the points by x and by y; the two orders are the braid permutations.
/// Edges pair points adjacent in at least one coordinate order.
pub fn braid_from_points(points: &PointSet) -> BraidGraph {
    let sigma = points
        .order_by(Axis::Vertical)
        .into_iter()
        .map(|i| i as VertexId)
        .collect();
    let tau = points
        .order_by(Axis::Horizontal)
        .into_iter()
        .map(|i| i as VertexId)
        .collect();
    BraidGraph { sigma, tau }
}

/// Embeds a braid on an integer grid: vertex v sits at (rank in sigma,
/// rank in tau), so sorting by x recovers sigma and sorting by y recovers
/// tau. Point index equals vertex id.
pub fn points_from_braid(b: &BraidGraph) -> PointSet {
    let n = b.n();
    let mut pos = alloc::vec![(0 as Coord, 0 as Coord); n];
    for (rank, &v) in b.sigma.iter().enumerate() {
        pos[v as usize].0 = rank as Coord;
    }
    for (rank, &v) in b.tau.iter().enumerate() {
        pos[v as usize].1 = rank as Coord;
    }
    PointSet { points: pos }
}

/// Minimum slab hitting set as vertex cover on the induced braid graph.
/// Braid vertex ids equal point indices, so the witness needs no
/// translation; when a cover exists it hits every induced slab.
pub fn min_slab_hitting_set(
    points: &PointSet,
    k: u32,
    cfg: &crate::branch::SolveConfig,
) -> Result<crate::branch::CoverResult, crate::branch::SolveError> {
    let braid = braid_from_points(points);
    let res = crate::branch::solve_vc(&braid.to_graph(), k, cfg)?;
    if cfg.check_cover {
        if let Some(cover) = &res.cover {
            let hitters: alloc::vec::Vec<usize> = cover.iter().map(|&v| v as usize).collect();
            assert!(
                points.hits_all(&hitters, &points.all_slabs()),
                "internal error: cover misses an induced slab"
            );
        }
    }
    Ok(res)
}

/// True iff the edge set of `g` equals the union of the path edges of the
/// two permutations exactly.
pub fn verify_braid(g: &Graph, sigma: &[VertexId], tau: &[VertexId]) -> Result<bool, BraidError> {
    let n = g.slots() as usize;
    check_permutation(sigma, n, "sigma")?;
    check_permutation(tau, n, "tau")?;
    let braid = BraidGraph {
        sigma: sigma.to_vec(),
        tau: tau.to_vec(),
    };
    Ok(braid.edges() == g.edge_list())
}
