//! Regular coverings: derived graphs of voltage assignments, quotients by
//! semiregular groups, covering transformations, monodromy and local groups.

mod cayley;
mod voltage;

pub use cayley::{bouquet_voltage, cayley_multigraph, involution_connection, left_regular_action};
pub use voltage::{derived_graph, reconstruct_voltages, verify_pfold, PfoldReport, VoltageAssignment};

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::dartgraph::{bfs_spanning_tree, fundamental_cycles, is_connected, tree_parents, tree_path, DartGraph};
use crate::error::{Error, Result};
use crate::jacobian::{AbelianGroup, GroupElement, JFlow};
use crate::symmetry::{
    acts_on, is_semiregular, is_xi_invariant, vertex_action, PermGroup, Permutation,
    DEFAULT_GROUP_ORDER_CAP,
};

/// A dart map from a covering graph onto a base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    total: DartGraph,
    base: DartGraph,
    projection: Vec<usize>,
}

impl CoveringMap {
    /// Only the shape is checked here; see [`validate_covering`].
    pub fn new(total: DartGraph, base: DartGraph, projection: Vec<usize>) -> Result<Self> {
        if projection.len() != total.dart_count() {
            return Err(Error::DimensionMismatch(format!(
                "projection has {} entries for {} darts",
                projection.len(),
                total.dart_count()
            )));
        }
        if let Some((x, &b)) = projection
            .iter()
            .enumerate()
            .find(|(_, &b)| b >= base.dart_count())
        {
            return Err(Error::DimensionMismatch(format!(
                "projection[{x}] = {b} is not a base dart"
            )));
        }
        Ok(CoveringMap {
            total,
            base,
            projection,
        })
    }

    pub fn total(&self) -> &DartGraph {
        &self.total
    }

    pub fn base(&self) -> &DartGraph {
        &self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Darts over `b`, ascending.
    pub fn fibre(&self, b: usize) -> Vec<usize> {
        (0..self.total.dart_count())
            .filter(|&x| self.projection[x] == b)
            .collect()
    }

    pub fn fold(&self) -> usize {
        self.fibre(0).len()
    }

    /// Total vertices over base vertex `v`, ordered by least dart.
    pub fn vertex_fibre(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.total.vertex_count())
            .filter(|&w| {
                self.base.vertex_of(self.projection[self.total.darts_at(w)[0]]) == v
            })
            .collect();
        out.sort_by_key(|&w| self.total.darts_at(w)[0]);
        out
    }

    /// The dart at total vertex `w` lying over base dart `b`.
    pub fn lift_at(&self, w: usize, b: usize) -> usize {
        *self
            .total
            .darts_at(w)
            .iter()
            .find(|&&x| self.projection[x] == b)
            .expect("covering restricts to bijections on vertex classes")
    }

    fn try_lift_at(&self, w: usize, b: usize) -> Option<usize> {
        self.total
            .darts_at(w)
            .iter()
            .copied()
            .find(|&x| self.projection[x] == b)
    }
}

/// Every reason `c` fails to be a covering; empty when it is one.
pub fn covering_problems(c: &CoveringMap) -> Vec<String> {
    let (t, b, p) = (&c.total, &c.base, &c.projection);
    let mut out = Vec::new();
    for x in 0..t.dart_count() {
        if p[t.inv(x)] != b.inv(p[x]) {
            out.push(format!("dart {x}: projection does not commute with lambda"));
        }
    }
    for w in 0..t.vertex_count() {
        let darts = t.darts_at(w);
        let v = b.vertex_of(p[darts[0]]);
        let mut image: Vec<usize> = darts.iter().map(|&x| p[x]).collect();
        image.sort_unstable();
        if image != b.darts_at(v) {
            out.push(format!(
                "vertex {w}: darts do not map bijectively onto base vertex {v}"
            ));
        }
    }
    let mut sizes = vec![0usize; b.dart_count()];
    for &y in p {
        sizes[y] += 1;
    }
    if let Some(y) = sizes.iter().position(|&s| s == 0) {
        out.push(format!("base dart {y} has an empty fibre"));
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        out.push(format!("fibre sizes differ: {sizes:?}"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub is_covering: bool,
    pub fold: usize,
    pub is_regular: bool,
    pub ct_order: usize,
    pub problems: Vec<String>,
}

pub fn validate_covering(c: &CoveringMap) -> CoveringReport {
    let mut problems = covering_problems(c);
    let is_covering = problems.is_empty();
    let fold = if is_covering { c.fold() } else { 0 };
    let mut ct_order = 0;
    if is_covering {
        match covering_transformations(c) {
            Ok(ct) => ct_order = ct.len(),
            Err(e) => problems.push(e.to_string()),
        }
    }
    CoveringReport {
        is_covering,
        fold,
        is_regular: is_covering && ct_order == fold,
        ct_order,
        problems,
    }
}

/// Extend `x0 -> y0` to an automorphism of the covering graph over the identity.
fn extend_over_identity(c: &CoveringMap, x0: usize, y0: usize) -> Option<Permutation> {
    let t = &c.total;
    let mut image: Vec<Option<usize>> = vec![None; t.dart_count()];
    image[x0] = Some(y0);
    let mut queue = VecDeque::from([x0]);
    let assign = |image: &mut Vec<Option<usize>>, queue: &mut VecDeque<usize>, x: usize, y: usize| {
        match image[x] {
            Some(z) => z == y,
            None => {
                image[x] = Some(y);
                queue.push_back(x);
                true
            }
        }
    };
    while let Some(x) = queue.pop_front() {
        let y = image[x].expect("queued darts are assigned");
        if !assign(&mut image, &mut queue, t.inv(x), t.inv(y)) {
            return None;
        }
        let wy = t.vertex_of(y);
        for &z in t.darts_at(t.vertex_of(x)) {
            let target = c.try_lift_at(wy, c.projection[z])?;
            if !assign(&mut image, &mut queue, z, target) {
                return None;
            }
        }
    }
    let image: Vec<usize> = image.into_iter().collect::<Option<_>>()?;
    Permutation::new(image).ok()
}

/// Covering transformations, identity first, ordered by the image of dart 0.
pub fn covering_transformations(c: &CoveringMap) -> Result<Vec<Permutation>> {
    let problems = covering_problems(c);
    if !problems.is_empty() {
        return Err(Error::NotACovering(problems.join("; ")));
    }
    if !is_connected(&c.total) {
        return Err(Error::Disconnected);
    }
    Ok(c
        .fibre(c.projection[0])
        .into_iter()
        .filter_map(|y| extend_over_identity(c, 0, y))
        .collect())
}

/// Closed walks at base vertex `v` whose lifts generate the monodromy group:
/// tree path out, fundamental cycle, tree path back.
fn closed_walks_at(base: &DartGraph, v: usize) -> Result<Vec<Vec<usize>>> {
    let tree = bfs_spanning_tree(base)?;
    let parent = tree_parents(base, &tree);
    Ok(fundamental_cycles(base, &tree)?
        .into_iter()
        .map(|w| {
            let u = w.start(base);
            let mut darts = tree_path(base, &parent, v, u);
            darts.extend_from_slice(w.darts());
            darts.extend(tree_path(base, &parent, u, v));
            darts
        })
        .collect())
}

/// Monodromy action on the fibre over base vertex `v`, with fibre vertices
/// numbered in order of their least dart.
pub fn monodromy_fibre_action(c: &CoveringMap, v: usize) -> Result<PermGroup> {
    let problems = covering_problems(c);
    if !problems.is_empty() {
        return Err(Error::NotACovering(problems.join("; ")));
    }
    if v >= c.base.vertex_count() {
        return Err(Error::InvalidArgument(format!("base vertex {v} out of range")));
    }
    let fibre = c.vertex_fibre(v);
    let pos: HashMap<usize, usize> = fibre.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut gens = Vec::new();
    for walk in closed_walks_at(&c.base, v)? {
        let image = fibre
            .iter()
            .map(|&start| {
                let end = walk.iter().fold(start, |cur, &b| {
                    c.total.vertex_of(c.total.inv(c.lift_at(cur, b)))
                });
                pos[&end]
            })
            .collect();
        let p = Permutation::new(image).expect("walk lifting permutes the fibre");
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    PermGroup::generate(fibre.len(), gens, DEFAULT_GROUP_ORDER_CAP)
}

/// Covering transformations restricted to the fibre over base vertex `v`.
pub fn ct_fibre_action(c: &CoveringMap, v: usize) -> Result<PermGroup> {
    let fibre = c.vertex_fibre(v);
    let pos: HashMap<usize, usize> = fibre.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let perms: Vec<Permutation> = covering_transformations(c)?
        .iter()
        .map(|f| {
            let act = vertex_action(&c.total, f);
            Permutation::new(fibre.iter().map(|&w| pos[&act.apply(w)]).collect())
                .expect("transformations permute fibres")
        })
        .collect();
    PermGroup::from_elements(fibre.len(), &perms, DEFAULT_GROUP_ORDER_CAP)
}

/// Quotient by a group acting semiregularly on darts and vertices.
///
/// Quotient darts are the dart orbits ordered by least dart; quotient vertices
/// are numbered in order of first appearance along that list.
pub fn quotient_graph(g: &DartGraph, group: &PermGroup) -> Result<(DartGraph, CoveringMap)> {
    if !acts_on(group, g) {
        return Err(Error::NotAnAutomorphism(
            "group does not act on the graph".into(),
        ));
    }
    if !is_semiregular(group, g) {
        return Err(Error::NotSemiregular(
            "a non-identity element fixes a dart or a vertex".into(),
        ));
    }
    let orbits = group.orbits();
    let mut orbit_of = vec![0; g.dart_count()];
    for (i, orb) in orbits.iter().enumerate() {
        for &x in orb {
            orbit_of[x] = i;
        }
    }
    let lambda: Vec<usize> = orbits.iter().map(|o| orbit_of[g.inv(o[0])]).collect();
    // a vertex orbit is keyed by its least vertex id
    let vertex_key: Vec<usize> = (0..g.vertex_count())
        .map(|v| {
            let x = g.darts_at(v)[0];
            group
                .elements()
                .iter()
                .map(|f| g.vertex_of(f.apply(x)))
                .min()
                .expect("group has an identity")
        })
        .collect();
    let mut vertex_id: HashMap<usize, usize> = HashMap::new();
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    for (i, orb) in orbits.iter().enumerate() {
        let key = vertex_key[g.vertex_of(orb[0])];
        let next = vertex_id.len();
        let id = *vertex_id.entry(key).or_insert(next);
        if id == vertices.len() {
            vertices.push(Vec::new());
        }
        vertices[id].push(i);
    }
    let quotient = DartGraph::new(lambda, vertices)?;
    let cover = CoveringMap::new(g.clone(), quotient.clone(), orbit_of)?;
    Ok((quotient, cover))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGroupReport {
    pub ambient: AbelianGroup,
    /// Sum of pushed-down flow values around each fundamental closed walk of the base.
    pub defects: Vec<GroupElement>,
    pub subgroup_order: BigInt,
    pub group_order: usize,
    pub divides: bool,
}

/// Push a group-invariant flow down a quotient covering and collect the
/// subgroup generated by its cycle defects.
pub fn local_group(c: &CoveringMap, flow: &JFlow, group: &PermGroup) -> Result<LocalGroupReport> {
    if flow.xi.len() != c.total.dart_count() {
        return Err(Error::DimensionMismatch(format!(
            "flow has {} values for {} darts",
            flow.xi.len(),
            c.total.dart_count()
        )));
    }
    if let Some(f) = group.generators().iter().find(|f| !is_xi_invariant(f, flow)) {
        return Err(Error::NotXiInvariant(format!("{f}")));
    }
    let base = &c.base;
    let pushed: Vec<&GroupElement> = (0..base.dart_count())
        .map(|b| &flow.xi[c.fibre(b)[0]])
        .collect();
    let tree = bfs_spanning_tree(base)?;
    let defects: Vec<GroupElement> = fundamental_cycles(base, &tree)?
        .iter()
        .map(|w| flow.group.sum(w.darts().iter().map(|&b| pushed[b])))
        .collect();
    let subgroup_order = flow.group.subgroup_order(&defects);
    let divides = BigInt::from(group.order()).mod_floor(&subgroup_order).is_zero();
    Ok(LocalGroupReport {
        ambient: flow.group.clone(),
        defects,
        subgroup_order,
        group_order: group.order(),
        divides,
    })
}
