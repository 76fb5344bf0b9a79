//! Graphs as dart sets with a vertex partition and a dart-reversing involution.
//!
//! A graph is a triple of darts, an equivalence on darts whose classes are the
//! vertices, and an involution `lambda` whose orbits are the edges. A fixed dart
//! is a semiedge; a two-dart orbit inside one vertex is a loop; every other
//! orbit is an ordinary edge. Parallel edges are allowed.

mod connectivity;
pub mod families;
mod trees;

pub use connectivity::{edge_connectivity, is_connected, max_flow_between};
pub use trees::{
    bfs_spanning_tree, fundamental_cycles, spanning_tree_count, spanning_tree_enumerate,
    SpanningTree, DEFAULT_ENUMERATION_EDGE_CAP,
};
pub(crate) use trees::{ordinary_laplacian, tree_parents, tree_path};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Check the raw parts of a graph and report every violated model invariant.
///
/// `vertices` lists the darts of each vertex class. The result is empty iff the
/// parts describe a legal graph.
pub fn validate(dart_count: usize, lambda: &[usize], vertices: &[Vec<usize>]) -> Vec<String> {
    let mut out = Vec::new();
    if dart_count == 0 {
        out.push("graph has no darts".to_string());
    }
    if lambda.len() != dart_count {
        out.push(format!(
            "lambda has {} entries, expected {}",
            lambda.len(),
            dart_count
        ));
    }
    let mut involutive = true;
    for (x, &y) in lambda.iter().enumerate() {
        if y >= dart_count {
            out.push(format!("lambda[{x}] = {y} is out of range 0..{dart_count}"));
            involutive = false;
        }
    }
    if involutive {
        for (x, &y) in lambda.iter().enumerate() {
            if y < lambda.len() && lambda[y] != x {
                out.push(format!(
                    "lambda not involution: lambda[{x}] = {y} but lambda[{y}] = {}",
                    lambda[y]
                ));
            }
        }
    }
    let mut seen: Vec<Option<(usize, usize)>> = vec![None; dart_count];
    for (v, class) in vertices.iter().enumerate() {
        if class.is_empty() {
            out.push(format!("vertices[{v}] is empty"));
        }
        for (i, &x) in class.iter().enumerate() {
            if x >= dart_count {
                out.push(format!(
                    "vertices[{v}][{i}] = {x} is out of range 0..{dart_count}"
                ));
                continue;
            }
            match seen[x] {
                Some((pv, pi)) => out.push(format!(
                    "vertices[{v}][{i}]: dart {x} already listed at vertices[{pv}][{pi}]"
                )),
                None => seen[x] = Some((v, i)),
            }
        }
    }
    for (x, s) in seen.iter().enumerate() {
        if s.is_none() {
            out.push(format!("dart {x} belongs to no vertex"));
        }
    }
    out
}

/// Kind of an edge, i.e. of a lambda-orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Semiedge,
    Loop,
    Ordinary,
}

/// One lambda-orbit. `dart` is the smaller dart id, so the set of all `dart`
/// fields is the canonical transversal `D+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub dart: usize,
    pub reverse: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    /// Endpoints with `endpoints.0 < endpoints.1`.
    pub endpoints: (usize, usize),
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeClassification {
    pub semiedges: Vec<usize>,
    pub loops: Vec<usize>,
    pub ordinary: Vec<usize>,
    /// Ordinary edges grouped by unordered endpoint pair, classes of size >= 2 only.
    pub parallel_classes: Vec<ParallelClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DartGraph {
    lambda: Vec<usize>,
    vertex_of: Vec<usize>,
    vertices: Vec<Vec<usize>>,
}

impl DartGraph {
    /// Build a graph from its involution and vertex classes. Darts inside each
    /// class are stored sorted; the order of the classes is kept.
    pub fn new(lambda: Vec<usize>, vertices: Vec<Vec<usize>>) -> Result<Self> {
        let violations = validate(lambda.len(), &lambda, &vertices);
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations));
        }
        let mut vertex_of = vec![0; lambda.len()];
        let mut vertices = vertices;
        for (v, class) in vertices.iter_mut().enumerate() {
            class.sort_unstable();
            for &x in class.iter() {
                vertex_of[x] = v;
            }
        }
        Ok(DartGraph {
            lambda,
            vertex_of,
            vertices,
        })
    }

    pub fn dart_count(&self) -> usize {
        self.lambda.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The reverse dart `x^-1`.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.lambda[x]
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    /// Incidence: the vertex a dart starts at.
    #[inline]
    pub fn vertex_of(&self, x: usize) -> usize {
        self.vertex_of[x]
    }

    /// Vertex the dart points to, i.e. the vertex of its reverse.
    #[inline]
    pub fn head(&self, x: usize) -> usize {
        self.vertex_of[self.lambda[x]]
    }

    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }

    pub fn vertex_classes(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    /// Number of darts at `v`; a semiedge counts once, a loop twice.
    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn is_semiedge(&self, x: usize) -> bool {
        self.lambda[x] == x
    }

    pub fn is_loop(&self, x: usize) -> bool {
        self.lambda[x] != x && self.head(x) == self.vertex_of(x)
    }

    pub fn is_ordinary(&self, x: usize) -> bool {
        self.head(x) != self.vertex_of(x)
    }

    pub fn dart_kind(&self, x: usize) -> EdgeKind {
        if self.is_semiedge(x) {
            EdgeKind::Semiedge
        } else if self.is_loop(x) {
            EdgeKind::Loop
        } else {
            EdgeKind::Ordinary
        }
    }

    /// Whether `x` is the representative (smaller) dart of its edge.
    #[inline]
    pub fn is_positive(&self, x: usize) -> bool {
        x <= self.lambda[x]
    }

    /// The transversal `D+` in ascending dart order.
    pub fn positive_darts(&self) -> Vec<usize> {
        (0..self.dart_count()).filter(|&x| self.is_positive(x)).collect()
    }

    /// Edges ordered by representative dart; `Edge::id` is the position.
    pub fn edges(&self) -> Vec<Edge> {
        self.positive_darts()
            .into_iter()
            .enumerate()
            .map(|(id, x)| Edge {
                id,
                dart: x,
                reverse: self.lambda[x],
                kind: self.dart_kind(x),
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.positive_darts().len()
    }

    /// Map dart -> edge id.
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.dart_count()];
        for e in self.edges() {
            idx[e.dart] = e.id;
            idx[e.reverse] = e.id;
        }
        idx
    }

    pub fn has_semiedges(&self) -> bool {
        (0..self.dart_count()).any(|x| self.is_semiedge(x))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.dart_count()).any(|x| self.is_loop(x))
    }

    /// Simple: every edge ordinary and no two edges parallel.
    pub fn is_simple(&self) -> bool {
        if self.has_semiedges() || self.has_loops() {
            return false;
        }
        self.classify_edges().parallel_classes.is_empty()
    }

    pub fn classify_edges(&self) -> EdgeClassification {
        let mut out = EdgeClassification::default();
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in self.edges() {
            match e.kind {
                EdgeKind::Semiedge => out.semiedges.push(e.id),
                EdgeKind::Loop => out.loops.push(e.id),
                EdgeKind::Ordinary => {
                    out.ordinary.push(e.id);
                    let (a, b) = (self.vertex_of(e.dart), self.vertex_of(e.reverse));
                    by_pair.entry((a.min(b), a.max(b))).or_default().push(e.id);
                }
            }
        }
        out.parallel_classes = by_pair
            .into_iter()
            .filter(|(_, edges)| edges.len() > 1)
            .map(|(endpoints, edges)| ParallelClass { endpoints, edges })
            .collect();
        out
    }

    /// Symmetric matrix of ordinary-edge multiplicities between vertices.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for x in 0..self.dart_count() {
            if self.is_ordinary(x) {
                m[self.vertex_of(x)][self.head(x)] += 1;
            }
        }
        m
    }

    /// Drop loops and semiedges. Fails when that would leave an isolated vertex.
    pub fn without_loops_and_semiedges(&self) -> Result<DartGraph> {
        let keep: Vec<usize> = (0..self.dart_count())
            .filter(|&x| self.is_ordinary(x))
            .collect();
        let mut renum = vec![usize::MAX; self.dart_count()];
        for (i, &x) in keep.iter().enumerate() {
            renum[x] = i;
        }
        let lambda = keep.iter().map(|&x| renum[self.inv(x)]).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|class| {
                class
                    .iter()
                    .filter(|&&x| renum[x] != usize::MAX)
                    .map(|&x| renum[x])
                    .collect()
            })
            .collect();
        DartGraph::new(lambda, vertices)
    }
}

/// Incremental construction of a graph from vertex-level edge descriptions.
///
/// Each `edge(u, w)` adds darts `k` (at `u`) and `k + 1` (at `w`).
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    lambda: Vec<usize>,
    vertices: Vec<Vec<usize>>,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        GraphBuilder {
            lambda: Vec::new(),
            vertices: vec![Vec::new(); vertex_count],
        }
    }

    /// Ordinary edge for `u != w`, loop for `u == w`.
    pub fn edge(&mut self, u: usize, w: usize) -> &mut Self {
        let x = self.lambda.len();
        self.lambda.push(x + 1);
        self.lambda.push(x);
        self.vertices[u].push(x);
        self.vertices[w].push(x + 1);
        self
    }

    pub fn edges(&mut self, list: &[(usize, usize)]) -> &mut Self {
        for &(u, w) in list {
            self.edge(u, w);
        }
        self
    }

    pub fn semiedge(&mut self, v: usize) -> &mut Self {
        let x = self.lambda.len();
        self.lambda.push(x);
        self.vertices[v].push(x);
        self
    }

    pub fn build(&self) -> Result<DartGraph> {
        DartGraph::new(self.lambda.clone(), self.vertices.clone())
    }
}

/// An oriented walk: consecutive darts satisfy `I(x_{i+1}) = I(x_i^-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    darts: Vec<usize>,
}

impl Walk {
    pub fn new(g: &DartGraph, darts: Vec<usize>) -> Result<Self> {
        if darts.is_empty() {
            return Err(Error::InvalidArgument("empty walk".into()));
        }
        for (i, &x) in darts.iter().enumerate() {
            if x >= g.dart_count() {
                return Err(Error::InvalidArgument(format!(
                    "walk position {i}: dart {x} out of range"
                )));
            }
        }
        for (i, w) in darts.windows(2).enumerate() {
            if g.vertex_of(w[1]) != g.head(w[0]) {
                return Err(Error::InvalidArgument(format!(
                    "walk breaks between positions {i} and {}",
                    i + 1
                )));
            }
        }
        Ok(Walk { darts })
    }

    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn start(&self, g: &DartGraph) -> usize {
        g.vertex_of(self.darts[0])
    }

    pub fn end(&self, g: &DartGraph) -> usize {
        g.head(*self.darts.last().expect("walks are non-empty"))
    }

    pub fn is_closed(&self, g: &DartGraph) -> bool {
        self.start(g) == self.end(g)
    }

    /// `W^-1`: reversed order, each dart replaced by its reverse.
    pub fn reversed(&self, g: &DartGraph) -> Walk {
        Walk {
            darts: self.darts.iter().rev().map(|&x| g.inv(x)).collect(),
        }
    }

    /// Signed traversal counts over `D+`, indexed by dart id.
    pub fn signed_counts(&self, g: &DartGraph) -> Vec<i64> {
        let mut c = vec![0i64; g.dart_count()];
        for &x in &self.darts {
            if g.is_positive(x) {
                c[x] += 1;
            } else {
                c[g.inv(x)] -= 1;
            }
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn single_semiedge_is_valid() {
        assert!(validate(1, &[0], &[vec![0]]).is_empty());
        let g = DartGraph::new(vec![0], vec![vec![0]]).unwrap();
        let c = g.classify_edges();
        assert_eq!(c.semiedges, vec![0]);
        assert!(c.loops.is_empty() && c.ordinary.is_empty());
    }

    #[test]
    fn three_cycle_lambda_rejected() {
        let v = validate(3, &[1, 2, 0], &[vec![0, 1, 2]]);
        assert!(v.iter().any(|s| s.contains("lambda not involution")), "{v:?}");
    }

    #[test]
    fn path_with_four_darts_is_valid() {
        let g = path(3);
        assert_eq!(g.dart_count(), 4);
        assert!(validate(4, g.lambda(), g.vertex_classes()).is_empty());
    }

    #[test]
    fn positional_diagnostics() {
        let v = validate(3, &[0, 5, 2], &[vec![0, 0], vec![], vec![2]]);
        assert!(v.iter().any(|s| s.contains("lambda[1] = 5")));
        assert!(v.iter().any(|s| s.contains("vertices[0][1]")));
        assert!(v.iter().any(|s| s.contains("vertices[1] is empty")));
        assert!(v.iter().any(|s| s.contains("dart 1 belongs to no vertex")));
        assert!(validate(0, &[], &[]).iter().any(|s| s.contains("no darts")));
    }

    #[test]
    fn loop_classification() {
        let g = DartGraph::new(vec![1, 0], vec![vec![0, 1]]).unwrap();
        let c = g.classify_edges();
        assert_eq!(c.loops, vec![0]);
        assert_eq!(g.valency(0), 2);
    }

    #[test]
    fn example72_parallel_classes() {
        let g = two_triple_bundles();
        let c = g.classify_edges();
        assert_eq!(c.ordinary.len(), 6);
        assert_eq!(c.parallel_classes.len(), 2);
        assert!(c.parallel_classes.iter().all(|p| p.edges.len() == 3));
        assert!(!g.is_simple());
    }

    #[test]
    fn walks() {
        let g = cycle(4);
        let w = Walk::new(&g, vec![0, 2, 4, 6]).unwrap();
        assert!(w.is_closed(&g));
        let r = w.reversed(&g);
        assert_eq!(r.darts(), &[7, 5, 3, 1]);
        assert!(Walk::new(&g, vec![0, 4]).is_err());
        assert_eq!(w.signed_counts(&g), vec![1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(r.signed_counts(&g), vec![-1, 0, -1, 0, -1, 0, -1, 0]);
    }

    #[test]
    fn semiedge_is_closed_walk() {
        let g = bouquet_of_semiedges(1);
        assert!(Walk::new(&g, vec![0]).unwrap().is_closed(&g));
    }

    #[test]
    fn reduction_drops_loops_and_semiedges() {
        let mut b = GraphBuilder::new(2);
        b.edge(0, 1).edge(0, 0).semiedge(1);
        let g = b.build().unwrap();
        let r = g.without_loops_and_semiedges().unwrap();
        assert_eq!(r.dart_count(), 2);
        assert!(r.is_simple());
        assert!(bouquet_of_semiedges(2).without_loops_and_semiedges().is_err());
    }
}
