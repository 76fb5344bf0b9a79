use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use super::{is_connected, DartGraph, EdgeKind, Walk};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// Default bound on ordinary edges for exhaustive tree enumeration.
pub const DEFAULT_ENUMERATION_EDGE_CAP: usize = 12;

/// A spanning tree, stored as edge ids (see [`DartGraph::edges`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    edges: BTreeSet<usize>,
}

impl SpanningTree {
    pub fn new(g: &DartGraph, edges: BTreeSet<usize>) -> Result<Self> {
        let all = g.edges();
        let n = g.vertex_count();
        if edges.len() + 1 != n {
            return Err(Error::NotASpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut uf = UnionFind::new(n);
        for &e in &edges {
            let edge = all
                .get(e)
                .ok_or_else(|| Error::NotASpanningTree(format!("edge {e} out of range")))?;
            if edge.kind != EdgeKind::Ordinary {
                return Err(Error::NotASpanningTree(format!("edge {e} is not ordinary")));
            }
            if !uf.union(g.vertex_of(edge.dart), g.vertex_of(edge.reverse)) {
                return Err(Error::NotASpanningTree(format!("edge {e} closes a cycle")));
            }
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &BTreeSet<usize> {
        &self.edges
    }

    /// Both darts of every tree edge.
    pub fn darts(&self, g: &DartGraph) -> BTreeSet<usize> {
        let all = g.edges();
        self.edges
            .iter()
            .flat_map(|&e| [all[e].dart, all[e].reverse])
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Breadth-first spanning tree rooted at vertex 0, scanning darts in class order.
pub fn bfs_spanning_tree(g: &DartGraph) -> Result<SpanningTree> {
    let idx = g.edge_index();
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut edges = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for &x in g.darts_at(v) {
            let w = g.head(x);
            if !seen[w] {
                seen[w] = true;
                edges.insert(idx[x]);
                queue.push_back(w);
            }
        }
    }
    if edges.len() + 1 != n {
        return Err(Error::Disconnected);
    }
    Ok(SpanningTree { edges })
}

/// Laplacian over ordinary edges only; loops and semiedges are ignored.
pub(crate) fn ordinary_laplacian(g: &DartGraph) -> IntMatrix {
    let m = g.multiplicity_matrix();
    let n = g.vertex_count();
    let mut lap = IntMatrix::zeros(n, n);
    for i in 0..n {
        let deg: usize = m[i].iter().sum();
        lap[(i, i)] = BigInt::from(deg);
        for j in 0..n {
            if i != j {
                lap[(i, j)] = -BigInt::from(m[i][j]);
            }
        }
    }
    lap
}

/// Number of spanning trees, as the determinant of the Laplacian with
/// row and column 0 removed.
pub fn spanning_tree_count(g: &DartGraph) -> Result<BigInt> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() == 1 {
        return Ok(BigInt::one());
    }
    ordinary_laplacian(g).minor(0, 0).determinant()
}

/// All spanning trees, by lexicographic backtracking over ordinary edges.
pub fn spanning_tree_enumerate(g: &DartGraph, max_edges: usize) -> Result<Vec<SpanningTree>> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let ordinary: Vec<(usize, usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|e| e.kind == EdgeKind::Ordinary)
        .map(|e| (e.id, g.vertex_of(e.dart), g.vertex_of(e.reverse)))
        .collect();
    if ordinary.len() > max_edges {
        return Err(Error::ScaleExceeded {
            what: "ordinary edges for enumeration",
            actual: ordinary.len(),
            cap: max_edges,
        });
    }
    let need = g.vertex_count() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    backtrack(&ordinary, 0, need, g.vertex_count(), &mut chosen, &mut out);
    Ok(out)
}

fn backtrack(
    edges: &[(usize, usize, usize)],
    start: usize,
    need: usize,
    n: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SpanningTree>,
) {
    if chosen.len() == need {
        out.push(SpanningTree {
            edges: chosen.iter().map(|&i| edges[i].0).collect(),
        });
        return;
    }
    if edges.len() - start < need - chosen.len() {
        return;
    }
    for i in start..edges.len() {
        // acyclicity of chosen + i
        let mut uf = UnionFind::new(n);
        for &c in chosen.iter() {
            uf.union(edges[c].1, edges[c].2);
        }
        if !uf.union(edges[i].1, edges[i].2) {
            continue;
        }
        chosen.push(i);
        backtrack(edges, i + 1, need, n, chosen, out);
        chosen.pop();
    }
}

/// Darts leading from each vertex toward the root of `t` (vertex 0).
fn parent_darts(g: &DartGraph, t: &SpanningTree) -> Vec<Option<usize>> {
    let tree_darts = t.darts(g);
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &x in g.darts_at(v) {
            if tree_darts.contains(&x) {
                let w = g.head(x);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(g.inv(x));
                    queue.push_back(w);
                }
            }
        }
    }
    parent
}

/// Darts of the tree path from `from` to `to`.
pub(crate) fn tree_path(
    g: &DartGraph,
    parent: &[Option<usize>],
    from: usize,
    to: usize,
) -> Vec<usize> {
    let up = |mut v: usize| {
        let mut darts = Vec::new();
        let mut verts = vec![v];
        while let Some(x) = parent[v] {
            darts.push(x);
            v = g.head(x);
            verts.push(v);
        }
        (darts, verts)
    };
    let (mut a, va) = up(from);
    let (mut b, vb) = up(to);
    // strip the common part above the lowest common ancestor
    let (mut i, mut j) = (va.len(), vb.len());
    while i > 1 && j > 1 && va[i - 2] == vb[j - 2] {
        i -= 1;
        j -= 1;
    }
    a.truncate(i - 1);
    b.truncate(j - 1);
    a.extend(b.iter().rev().map(|&x| g.inv(x)));
    a
}

pub(crate) fn tree_parents(g: &DartGraph, t: &SpanningTree) -> Vec<Option<usize>> {
    parent_darts(g, t)
}

/// One closed walk per co-tree ordinary edge (its representative dart, then the
/// tree path back), followed by a length-1 walk per loop and per semiedge.
pub fn fundamental_cycles(g: &DartGraph, t: &SpanningTree) -> Result<Vec<Walk>> {
    SpanningTree::new(g, t.edges.clone())?;
    let parent = parent_darts(g, t);
    let mut ordinary = Vec::new();
    let mut short = Vec::new();
    for e in g.edges() {
        match e.kind {
            EdgeKind::Ordinary if !t.edges.contains(&e.id) => {
                let x = e.dart;
                let mut darts = vec![x];
                darts.extend(tree_path(g, &parent, g.head(x), g.vertex_of(x)));
                ordinary.push(Walk::new(g, darts)?);
            }
            EdgeKind::Ordinary => {}
            EdgeKind::Loop | EdgeKind::Semiedge => short.push(Walk::new(g, vec![e.dart])?),
        }
    }
    ordinary.extend(short);
    Ok(ordinary)
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::super::GraphBuilder;
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(spanning_tree_count(&path(5)).unwrap(), BigInt::from(1));
        for n in 3..9 {
            assert_eq!(spanning_tree_count(&cycle(n)).unwrap(), BigInt::from(n));
        }
        assert_eq!(spanning_tree_count(&two_triple_bundles()).unwrap(), BigInt::from(9));
        assert_eq!(spanning_tree_count(&complete(4)).unwrap(), BigInt::from(16));
        assert_eq!(spanning_tree_count(&petersen()).unwrap(), BigInt::from(2000));
        assert_eq!(spanning_tree_count(&bouquet_of_semiedges(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn disconnected_errors() {
        let mut b = GraphBuilder::new(4);
        b.edge(0, 1).edge(2, 3);
        let g = b.build().unwrap();
        assert_eq!(spanning_tree_count(&g), Err(Error::Disconnected));
        assert_eq!(spanning_tree_enumerate(&g, 12), Err(Error::Disconnected));
        assert_eq!(bfs_spanning_tree(&g), Err(Error::Disconnected));
    }

    #[test]
    fn enumeration_examples() {
        let tri = spanning_tree_enumerate(&cycle(3), 12).unwrap();
        assert_eq!(tri.len(), 3);
        for t in &tri {
            assert_eq!(t.edges().len(), 2);
        }
        assert_eq!(spanning_tree_enumerate(&path(3), 12).unwrap().len(), 1);
        assert_eq!(spanning_tree_enumerate(&theta(3), 12).unwrap().len(), 3);
        assert_eq!(spanning_tree_enumerate(&complete(4), 12).unwrap().len(), 16);
        assert!(matches!(
            spanning_tree_enumerate(&petersen(), 12),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn fundamental_cycle_examples() {
        let p = path(4);
        let t = bfs_spanning_tree(&p).unwrap();
        assert!(fundamental_cycles(&p, &t).unwrap().is_empty());

        let c4 = cycle(4);
        let t = bfs_spanning_tree(&c4).unwrap();
        let cyc = fundamental_cycles(&c4, &t).unwrap();
        assert_eq!(cyc.len(), 1);
        assert_eq!(cyc[0].len(), 4);
        assert!(cyc[0].is_closed(&c4));

        let b = bouquet_of_semiedges(3);
        let t = bfs_spanning_tree(&b).unwrap();
        let cyc = fundamental_cycles(&b, &t).unwrap();
        assert_eq!(cyc.len(), 3);
        assert!(cyc.iter().all(|w| w.len() == 1 && w.is_closed(&b)));
    }

    #[test]
    fn rejects_non_tree() {
        let g = cycle(3);
        let all: BTreeSet<usize> = (0..3).collect();
        assert!(matches!(
            SpanningTree::new(&g, all),
            Err(Error::NotASpanningTree(_))
        ));
        let bad = SpanningTree {
            edges: [0].into_iter().collect(),
        };
        assert!(matches!(
            fundamental_cycles(&g, &bad),
            Err(Error::NotASpanningTree(_))
        ));
    }

    #[test]
    fn cycles_close_in_k4() {
        let g = complete(4);
        for t in spanning_tree_enumerate(&g, 12).unwrap() {
            let cyc = fundamental_cycles(&g, &t).unwrap();
            assert_eq!(cyc.len(), 3);
            for w in cyc {
                assert!(w.is_closed(&g));
            }
        }
    }
}
