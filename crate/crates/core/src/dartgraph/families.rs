//! Named graph families used throughout tests and the verification harness.

use super::{DartGraph, GraphBuilder};

fn build(n: usize, edges: &[(usize, usize)]) -> DartGraph {
    GraphBuilder::new(n)
        .edges(edges)
        .build()
        .expect("family graphs are valid")
}

/// Path with `n >= 2` vertices.
pub fn path(n: usize) -> DartGraph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build(n, &edges)
}

/// Cycle `C_n`, `n >= 3`; edge `i` joins `i` and `i + 1 mod n` with darts `2i`, `2i + 1`.
pub fn cycle(n: usize) -> DartGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

pub fn complete(n: usize) -> DartGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> DartGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    build(a + b, &edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i + 5`.
pub fn petersen() -> DartGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, &edges)
}

/// Hypercube `Q_d` on bit vectors.
pub fn cube(d: usize) -> DartGraph {
    let n = 1 << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    build(n, &edges)
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(k: usize) -> DartGraph {
    build(2, &vec![(0, 1); k])
}

/// One vertex carrying `k` semiedges.
pub fn bouquet_of_semiedges(k: usize) -> DartGraph {
    let mut b = GraphBuilder::new(1);
    for _ in 0..k {
        b.semiedge(0);
    }
    b.build().expect("k >= 1")
}

/// Central vertex 0 joined to outer vertices 1 and 2 by three parallel edges each.
pub fn two_triple_bundles() -> DartGraph {
    build(3, &[(0, 1), (0, 1), (0, 1), (0, 2), (0, 2), (0, 2)])
}
