use num_bigint::BigInt;
use serde::Serialize;

use super::{covering_transformations, CoveringMap};
use crate::dartgraph::{
    bfs_spanning_tree, edge_connectivity, is_connected, spanning_tree_count, tree_parents,
    tree_path, DartGraph, SpanningTree,
};
use crate::error::{Error, Result};
use crate::symmetry::{vertex_action, FiniteGroup};

/// Group-valued labelling of the darts of a base graph with
/// `xi(lambda(x)) = xi(x)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment {
    base: DartGraph,
    group: FiniteGroup,
    xi: Vec<usize>,
    tree: Option<Vec<usize>>,
}

impl VoltageAssignment {
    pub fn new(base: DartGraph, group: FiniteGroup, xi: Vec<usize>) -> Result<Self> {
        if xi.len() != base.dart_count() {
            return Err(Error::InvalidVoltage(format!(
                "{} voltages for {} darts",
                xi.len(),
                base.dart_count()
            )));
        }
        if let Some((x, &a)) = xi.iter().enumerate().find(|(_, &a)| a >= group.order()) {
            return Err(Error::InvalidVoltage(format!(
                "xi[{x}] = {a} is not an element of a group of order {}",
                group.order()
            )));
        }
        for x in 0..base.dart_count() {
            let y = base.inv(x);
            if xi[y] != group.inv(xi[x]) {
                return Err(Error::InvalidVoltage(format!(
                    "xi[{y}] = {} is not the inverse of xi[{x}] = {}",
                    xi[y], xi[x]
                )));
            }
        }
        Ok(VoltageAssignment {
            base,
            group,
            xi,
            tree: None,
        })
    }

    /// Attach a spanning tree, given by its darts, on which every voltage is trivial.
    pub fn with_tree(mut self, tree_darts: Vec<usize>) -> Result<Self> {
        let mut edges = std::collections::BTreeSet::new();
        let index = self.base.edge_index();
        for &x in &tree_darts {
            if x >= self.base.dart_count() {
                return Err(Error::InvalidVoltage(format!("tree dart {x} out of range")));
            }
            if self.xi[x] != 0 {
                return Err(Error::InvalidVoltage(format!(
                    "tree dart {x} carries non-trivial voltage {}",
                    self.xi[x]
                )));
            }
            edges.insert(index[x]);
        }
        SpanningTree::new(&self.base, edges)?;
        self.tree = Some(tree_darts);
        Ok(self)
    }

    pub fn base(&self) -> &DartGraph {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn xi(&self) -> &[usize] {
        &self.xi
    }

    pub fn tree(&self) -> Option<&[usize]> {
        self.tree.as_deref()
    }

    pub fn generates(&self) -> bool {
        self.group.generates(&self.xi)
    }

    /// Trivial on an attached spanning tree and generating the group.
    pub fn is_t_reduced(&self) -> bool {
        self.tree.is_some() && self.generates()
    }
}

/// Derived graph on `G x D`: dart `(g, x)` has id `g * |D| + x`,
/// `lambda(g, x) = (g * xi(x), lambda(x))`, and vertex `(g, v)` has id
/// `g * |V| + v`. The projection `(g, x) -> x` is returned alongside.
pub fn derived_graph(v: &VoltageAssignment) -> Result<(DartGraph, CoveringMap)> {
    let base = &v.base;
    let n = base.dart_count();
    let order = v.group.order();
    let mut lambda = Vec::with_capacity(order * n);
    for g in 0..order {
        for x in 0..n {
            lambda.push(v.group.mul(g, v.xi[x]) * n + base.inv(x));
        }
    }
    let mut vertices = Vec::with_capacity(order * base.vertex_count());
    for g in 0..order {
        for class in base.vertex_classes() {
            vertices.push(class.iter().map(|&x| g * n + x).collect());
        }
    }
    let total = DartGraph::new(lambda, vertices)?;
    let projection = (0..order * n).map(|d| d % n).collect();
    let cover = CoveringMap::new(total.clone(), base.clone(), projection)?;
    Ok((total, cover))
}

/// Describe a regular covering by voltages in its covering transformation group.
///
/// Returns the assignment, trivial on a BFS tree of the base, and the dart
/// bijection from the derived graph onto the covering graph.
pub fn reconstruct_voltages(c: &CoveringMap) -> Result<(VoltageAssignment, Vec<usize>)> {
    let total = c.total();
    let base = c.base();
    let ct = covering_transformations(c)?;
    let fold = c.fold();
    if ct.len() != fold {
        return Err(Error::HypothesisUnmet(format!(
            "covering is not regular: {} transformations for fold {fold}",
            ct.len()
        )));
    }
    let group = FiniteGroup::from_permutations(&ct)?;
    let actions: Vec<_> = ct.iter().map(|f| vertex_action(total, f)).collect();

    let tree = bfs_spanning_tree(base)?;
    let parent = tree_parents(base, &tree);
    let root = 0;
    let root_lift = total.vertex_of(c.fibre(base.darts_at(root)[0])[0]);
    let mut lift_vertex = vec![usize::MAX; base.vertex_count()];
    for v in 0..base.vertex_count() {
        let mut cur = root_lift;
        for b in tree_path(base, &parent, root, v) {
            cur = total.vertex_of(total.inv(c.lift_at(cur, b)));
        }
        lift_vertex[v] = cur;
    }

    let mut xi = vec![0; base.dart_count()];
    for (x, slot) in xi.iter_mut().enumerate() {
        let lifted = c.lift_at(lift_vertex[base.vertex_of(x)], x);
        let end = total.vertex_of(total.inv(lifted));
        let target = lift_vertex[base.head(x)];
        *slot = actions
            .iter()
            .position(|a| a.apply(target) == end)
            .expect("regular coverings act transitively on fibres");
    }
    let tree_darts = tree.darts(base).into_iter().collect();
    let va = VoltageAssignment::new(base.clone(), group, xi)?.with_tree(tree_darts)?;

    let n = base.dart_count();
    let iso = (0..fold * n)
        .map(|d| {
            let (g, x) = (d / n, d % n);
            ct[g].apply(c.lift_at(lift_vertex[base.vertex_of(x)], x))
        })
        .collect();
    Ok((va, iso))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfoldReport {
    pub p: usize,
    #[serde(serialize_with = "crate::io::big_string")]
    pub tau_total: BigInt,
    #[serde(serialize_with = "crate::io::big_string")]
    pub tau_base: BigInt,
    pub simple: bool,
    pub three_edge_connected: bool,
    /// `tau_total >= p * tau_base`
    pub bound_holds: bool,
    /// strict inequality, or not required because the cover is only 2-edge-connected
    pub strict_when_3ec: bool,
    pub violation: bool,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Compare spanning tree counts of a prime-fold cover and its base.
///
/// The cover must be connected, 2-edge-connected and free of loops and
/// semiedges. Parallel edges are accepted and reported through `simple`.
pub fn verify_pfold(v: &VoltageAssignment) -> Result<PfoldReport> {
    let p = v.group.order();
    if !is_prime(p) {
        return Err(Error::HypothesisUnmet(format!("group order {p} is not prime")));
    }
    let (total, _) = derived_graph(v)?;
    if !is_connected(&total) {
        return Err(Error::HypothesisUnmet("derived graph is disconnected".into()));
    }
    if total.has_loops() || total.has_semiedges() {
        return Err(Error::HypothesisUnmet(
            "derived graph has loops or semiedges".into(),
        ));
    }
    let lambda = edge_connectivity(&total)?;
    if lambda < 2 {
        return Err(Error::HypothesisUnmet(format!(
            "derived graph is only {lambda}-edge-connected"
        )));
    }
    let tau_total = spanning_tree_count(&total)?;
    let tau_base = spanning_tree_count(&v.base)?;
    let bound = BigInt::from(p) * &tau_base;
    let three_edge_connected = lambda >= 3;
    let bound_holds = tau_total >= bound;
    let strict_when_3ec = !three_edge_connected || tau_total > bound;
    Ok(PfoldReport {
        p,
        simple: total.is_simple(),
        tau_total,
        tau_base,
        three_edge_connected,
        bound_holds,
        strict_when_3ec,
        violation: !(bound_holds && strict_when_3ec),
    })
}
