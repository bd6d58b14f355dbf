//! Seeded random instances: connected graphs of maximum degree four built
//! by degree-constrained edge insertion with rejection.

use braidvc_core::graph::{Graph, VertexId};
use rand::Rng;

/// Connected, max degree 4, n >= 1 vertices. `extra` bounds the number of
/// non-tree edges attempted.
pub fn random_connected_max_deg4(n: u32, extra: u32, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut degree = vec![0u32; n as usize];
    // random spanning tree: each vertex attaches to an earlier one that
    // still has room (one always exists, the average tree degree is < 2)
    for v in 1..n {
        let candidates: Vec<VertexId> = (0..v).filter(|&u| degree[u as usize] < 4).collect();
        let u = candidates[rng.gen_range(0..candidates.len())];
        edges.push((u, v));
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 20 * extra + 50 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || degree[u as usize] >= 4 || degree[v as usize] >= 4 {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
            continue;
        }
        edges.push(key);
        degree[u as usize] += 1;
        degree[v as usize] += 1;
        added += 1;
    }
    Graph::build(n, &edges).expect("generator produces valid edges")
}

/// Random general-position point set on a jittered grid: coordinates are a
/// random permutation in each axis, so distinctness is guaranteed.
pub fn random_general_position_points(n: usize, rng: &mut impl Rng) -> Vec<(i128, i128)> {
    let mut xs: Vec<i128> = (0..n as i128).collect();
    let mut ys: Vec<i128> = (0..n as i128).collect();
    shuffle(&mut xs, rng);
    shuffle(&mut ys, rng);
    xs.into_iter().zip(ys).collect()
}

fn shuffle<T>(items: &mut [T], rng: &mut impl Rng) {
    for i in (1..items.len()).rev() {
        items.swap(i, rng.gen_range(0..=i));
    }
}
