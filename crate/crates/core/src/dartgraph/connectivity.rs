use std::collections::VecDeque;

use super::DartGraph;
use crate::error::{Error, Result};

pub fn is_connected(g: &DartGraph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &x in g.darts_at(v) {
            let w = g.head(x);
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n
}

/// Maximum number of edge-disjoint `s`-`t` paths, with parallel ordinary
/// edges as unit capacities and loops ignored.
pub fn max_flow_between(g: &DartGraph, s: usize, t: usize) -> usize {
    let cap: Vec<Vec<i64>> = g
        .multiplicity_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as i64).collect())
        .collect();
    edmonds_karp(cap, s, t) as usize
}

fn edmonds_karp(mut cap: Vec<Vec<i64>>, s: usize, t: usize) -> i64 {
    let n = cap.len();
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for w in 0..n {
                if prev[w] == usize::MAX && cap[u][w] > 0 {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut w = t;
        while w != s {
            let u = prev[w];
            bottleneck = bottleneck.min(cap[u][w]);
            w = u;
        }
        let mut w = t;
        while w != s {
            let u = prev[w];
            cap[u][w] -= bottleneck;
            cap[w][u] += bottleneck;
            w = u;
        }
        flow += bottleneck;
    }
}

/// Minimum number of ordinary edges whose removal disconnects the graph.
///
/// Defined for semiedge-free graphs only. Disconnected graphs and the
/// one-vertex graph give 0.
pub fn edge_connectivity(g: &DartGraph) -> Result<usize> {
    if g.has_semiedges() {
        return Err(Error::SemiedgePresent);
    }
    let n = g.vertex_count();
    if n < 2 || !is_connected(g) {
        return Ok(0);
    }
    // Every global cut separates vertex 0 from some t.
    Ok((1..n)
        .map(|t| max_flow_between(g, 0, t))
        .min()
        .expect("n >= 2"))
}
