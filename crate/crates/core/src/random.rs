//! Seeded random instances.
//!
//! All randomness comes from ChaCha8 (`rand_chacha` 0.3): a generator is
//! `ChaCha8Rng::seed_from_u64(seed)` with `set_stream(stream)`. Rejection
//! sampling moves to the next stream, so an instance depends only on its seed
//! and parameters.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covers::VoltageAssignment;
use crate::dartgraph::{bfs_spanning_tree, is_connected, DartGraph, GraphBuilder};
use crate::error::{Error, Result};
use crate::symmetry::FiniteGroup;

/// Rejection sampling gives up after this many streams.
pub const MAX_ATTEMPTS: u64 = 10_000;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Seed for case `index` of a batch, drawn from stream `index` of `seed`.
pub fn case_seed(seed: u64, index: u64) -> u64 {
    rng(seed, index).next_u64()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Simple graph, each pair joined with probability `p`; disconnected draws are rejected.
    GnpSimple { n: usize, p: f64 },
    /// Random spanning tree plus extra parallel-allowed edges, loops and semiedges.
    RandomMultigraph {
        n: usize,
        extra_edges: usize,
        loops: usize,
        semiedges: usize,
    },
    /// Tree-reduced generating voltages on a fixed base.
    RandomVoltage { base: DartGraph, group: FiniteGroup },
    /// Inverse-closed generating connection set with at least `size` elements.
    RandomCayley { group: FiniteGroup, size: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(DartGraph),
    Voltage(VoltageAssignment),
    Cayley {
        group: FiniteGroup,
        connection: Vec<usize>,
    },
}

pub fn generate(spec: &RandomSpec) -> Result<Instance> {
    let seed = spec.seed;
    Ok(match &spec.family {
        Family::GnpSimple { n, p } => Instance::Graph(gnp_simple(seed, *n, *p)?),
        Family::RandomMultigraph {
            n,
            extra_edges,
            loops,
            semiedges,
        } => Instance::Graph(random_multigraph(seed, *n, *extra_edges, *loops, *semiedges)?),
        Family::RandomVoltage { base, group } => {
            Instance::Voltage(random_voltage(seed, base, group)?)
        }
        Family::RandomCayley { group, size } => Instance::Cayley {
            group: group.clone(),
            connection: random_connection(seed, group, *size)?,
        },
    })
}

pub fn gnp_simple(seed: u64, n: usize, p: f64) -> Result<DartGraph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("gnp-simple needs n >= 1 and 0 <= p <= 1, got n={n} p={p}")));
    }
    if n > 1 && p == 0.0 {
        return Err(Error::InvalidArgument("p = 0 never yields a connected graph".into()));
    }
    for stream in 0..MAX_ATTEMPTS {
        let mut r = rng(seed, stream);
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for w in u + 1..n {
                if r.gen_bool(p) {
                    b.edge(u, w);
                }
            }
        }
        if n == 1 {
            // a vertex needs a dart
            b.semiedge(0);
        }
        // an isolated vertex has no darts and is rejected like any disconnected draw
        if let Ok(g) = b.build() {
            if is_connected(&g) {
                return Ok(g);
            }
        }
    }
    Err(Error::HypothesisUnmet(format!(
        "no connected draw in {MAX_ATTEMPTS} attempts"
    )))
}

pub fn random_multigraph(
    seed: u64,
    n: usize,
    extra_edges: usize,
    loops: usize,
    semiedges: usize,
) -> Result<DartGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("random-multigraph needs n >= 1".into()));
    }
    if n == 1 && extra_edges + loops + semiedges == 0 {
        return Err(Error::InvalidArgument(
            "a one-vertex graph needs a loop or a semiedge".into(),
        ));
    }
    let mut r = rng(seed, 0);
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        let u = r.gen_range(0..v);
        b.edge(u, v);
    }
    for _ in 0..extra_edges {
        if n == 1 {
            b.edge(0, 0);
            continue;
        }
        let u = r.gen_range(0..n);
        let mut w = r.gen_range(0..n - 1);
        if w >= u {
            w += 1;
        }
        b.edge(u, w);
    }
    for _ in 0..loops {
        let v = r.gen_range(0..n);
        b.edge(v, v);
    }
    for _ in 0..semiedges {
        let v = r.gen_range(0..n);
        b.semiedge(v);
    }
    b.build()
}

/// Add `k` loops and semiedges (each kind chosen at random) at random vertices.
pub fn add_loops_and_semiedges(g: &DartGraph, r: &mut impl Rng, k: usize) -> Result<DartGraph> {
    let mut lambda = g.lambda().to_vec();
    let mut vertices = g.vertex_classes().to_vec();
    for _ in 0..k {
        let v = r.gen_range(0..g.vertex_count());
        let x = lambda.len();
        if r.gen_bool(0.5) {
            lambda.push(x);
            vertices[v].push(x);
        } else {
            lambda.extend([x + 1, x]);
            vertices[v].extend([x, x + 1]);
        }
    }
    DartGraph::new(lambda, vertices)
}

/// Voltages trivial on a BFS tree of `base` that generate `group`.
///
/// Each co-tree edge gets a uniform element (a uniform element of order at
/// most two on semiedges). Non-generating draws are rejected.
pub fn random_voltage(seed: u64, base: &DartGraph, group: &FiniteGroup) -> Result<VoltageAssignment> {
    let tree = bfs_spanning_tree(base)?;
    let tree_darts = tree.darts(base);
    let self_inverse: Vec<usize> = (0..group.order()).filter(|&a| group.inv(a) == a).collect();
    let cotree: Vec<usize> = base
        .positive_darts()
        .into_iter()
        .filter(|x| !tree_darts.contains(x))
        .collect();
    let reachable: Vec<usize> = if cotree.iter().any(|&x| !base.is_semiedge(x)) {
        (0..group.order()).collect()
    } else if cotree.is_empty() {
        vec![]
    } else {
        self_inverse.clone()
    };
    if !group.generates(&reachable) {
        return Err(Error::HypothesisUnmet(
            "co-tree darts of this base cannot carry generating voltages".into(),
        ));
    }
    for stream in 0..MAX_ATTEMPTS {
        let mut r = rng(seed, stream);
        let mut xi = vec![0; base.dart_count()];
        for &x in &cotree {
            let a = if base.is_semiedge(x) {
                *self_inverse.choose(&mut r).expect("identity is self-inverse")
            } else {
                r.gen_range(0..group.order())
            };
            xi[x] = a;
            xi[base.inv(x)] = group.inv(a);
        }
        if group.generates(&xi) {
            let v = VoltageAssignment::new(base.clone(), group.clone(), xi)?;
            return v.with_tree(tree_darts.iter().copied().collect());
        }
    }
    Err(Error::HypothesisUnmet(
        "no generating voltage assignment found on this base".into(),
    ))
}

/// Inverse-closed set of distinct non-identity elements generating `group`,
/// grown by random elements until it generates and has at least `size` entries.
pub fn random_connection(seed: u64, group: &FiniteGroup, size: usize) -> Result<Vec<usize>> {
    let n = group.order();
    if n < 2 {
        return Err(Error::InvalidArgument("the trivial group has no connection set".into()));
    }
    if size > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "connection size {size} exceeds the {} non-identity elements",
            n - 1
        )));
    }
    let mut r = rng(seed, 0);
    let mut pool: Vec<usize> = (1..n).collect();
    pool.shuffle(&mut r);
    let mut conn: Vec<usize> = Vec::new();
    for a in pool {
        if conn.len() >= size && group.generates(&conn) {
            break;
        }
        if conn.contains(&a) {
            continue;
        }
        conn.push(a);
        if group.inv(a) != a {
            conn.push(group.inv(a));
        }
    }
    conn.sort_unstable();
    Ok(conn)
}
