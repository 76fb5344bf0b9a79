//! The Jacobian of a connected graph as `Z^{D+} / L`, where `L` is spanned by
//! vertex-star sums and cycle sums, together with an explicit universal
//! harmonic flow (J-flow) read off the Smith normal form.

mod abelian;

pub use abelian::{AbelianGroup, GroupElement};

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dartgraph::{bfs_spanning_tree, fundamental_cycles, is_connected, DartGraph};
use crate::error::{Error, Result};
use crate::intlinalg::{invariant_factors, smith_normal_form, IntMatrix};

/// A flow `D -> group` stored for every dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFlow {
    pub group: AbelianGroup,
    pub xi: Vec<GroupElement>,
}

impl JFlow {
    pub fn value(&self, x: usize) -> &GroupElement {
        &self.xi[x]
    }

    /// Values on the representative darts `D+`, in ascending dart order.
    pub fn positive_table(&self, g: &DartGraph) -> Vec<GroupElement> {
        g.positive_darts()
            .into_iter()
            .map(|x| self.xi[x].clone())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Jacobian {
    pub group: AbelianGroup,
    pub flow: JFlow,
    /// Relation matrix, rows = relations, columns = `D+`.
    pub relations: IntMatrix,
    pub positive_darts: Vec<usize>,
}

fn column_index(g: &DartGraph) -> (Vec<usize>, Vec<usize>) {
    let pos = g.positive_darts();
    let mut col = vec![0; g.dart_count()];
    for (i, &x) in pos.iter().enumerate() {
        col[x] = i;
        col[g.inv(x)] = i;
    }
    (pos, col)
}

/// Rows: one star sum per vertex, then one sum per fundamental cycle of a BFS
/// tree (including length-1 cycles for loops and semiedges). A dart in `D+`
/// contributes +1 to its column, its reverse -1. Zero rows and repeated rows
/// are dropped.
pub fn relation_matrix(g: &DartGraph) -> Result<IntMatrix> {
    let tree = bfs_spanning_tree(g)?;
    let (pos, col) = column_index(g);
    let width = pos.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for v in 0..g.vertex_count() {
        let mut row = vec![0i64; width];
        for &x in g.darts_at(v) {
            row[col[x]] += if g.is_positive(x) { 1 } else { -1 };
        }
        rows.push(row);
    }
    for w in fundamental_cycles(g, &tree)? {
        let counts = w.signed_counts(g);
        rows.push(pos.iter().map(|&x| counts[x]).collect());
    }
    let mut seen = HashSet::new();
    rows.retain(|r| r.iter().any(|&c| c != 0) && seen.insert(r.clone()));
    let big: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    IntMatrix::from_big_rows(big, width)
}

/// Jacobian group and J-flow of a connected graph.
///
/// With `U R V = S`, the generator `e_x` (row vector) maps to `e_x V`, i.e.
/// row `x` of `V`, reduced modulo the diagonal; coordinates with `d_i = 1`
/// are dropped.
pub fn jacobian(g: &DartGraph) -> Result<Jacobian> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let relations = relation_matrix(g)?;
    let (pos, col) = column_index(g);
    let snf = smith_normal_form(&relations);
    let diag = snf.diagonal();
    assert_eq!(
        diag.len(),
        pos.len(),
        "relation lattice of a connected graph has full rank"
    );
    let kept: Vec<usize> = (0..diag.len()).filter(|&i| !diag[i].is_one()).collect();
    let group = AbelianGroup::new(kept.iter().map(|&i| diag[i].clone()).collect())?;
    let mut xi = Vec::with_capacity(g.dart_count());
    for x in 0..g.dart_count() {
        let r = col[x];
        let coords: Vec<BigInt> = kept.iter().map(|&i| snf.v[(r, i)].clone()).collect();
        let e = group.element(coords);
        xi.push(if g.is_positive(x) { e } else { group.neg(&e) });
    }
    Ok(Jacobian {
        flow: JFlow {
            group: group.clone(),
            xi,
        },
        group,
        relations,
        positive_darts: pos,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowViolation {
    /// Wrong number of values, or a value outside the group.
    Malformed(String),
    /// `xi(x^-1) != -xi(x)`
    Flw { dart: usize },
    /// Values do not generate the group.
    Gen,
    /// Star sum at a vertex is nonzero.
    Klv { vertex: usize },
    /// Sum along a closed walk is nonzero.
    Klc { walk: Vec<usize> },
    Disconnected,
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowViolation::Malformed(s) => write!(f, "malformed flow: {s}"),
            FlowViolation::Flw { dart } => write!(f, "FLW fails at dart {dart}"),
            FlowViolation::Gen => write!(f, "GEN fails: values do not generate the group"),
            FlowViolation::Klv { vertex } => write!(f, "KLV fails at vertex {vertex}"),
            FlowViolation::Klc { walk } => write!(f, "KLC fails on closed walk {walk:?}"),
            FlowViolation::Disconnected => write!(f, "graph is disconnected"),
        }
    }
}

/// Check FLW, GEN, KLV everywhere and KLC on a fundamental cycle basis plus
/// the length-1 loop and semiedge cycles.
pub fn validate_flow(g: &DartGraph, f: &JFlow) -> Vec<FlowViolation> {
    let grp = &f.group;
    if f.xi.len() != g.dart_count() {
        return vec![FlowViolation::Malformed(format!(
            "{} values for {} darts",
            f.xi.len(),
            g.dart_count()
        ))];
    }
    if let Some(x) = (0..g.dart_count()).find(|&x| !grp.contains(&f.xi[x])) {
        return vec![FlowViolation::Malformed(format!("value at dart {x} is not reduced"))];
    }
    let mut out = Vec::new();
    for x in 0..g.dart_count() {
        if f.xi[g.inv(x)] != grp.neg(&f.xi[x]) {
            out.push(FlowViolation::Flw { dart: x });
        }
    }
    if !grp.generated_by(&f.xi) {
        out.push(FlowViolation::Gen);
    }
    for v in 0..g.vertex_count() {
        if !grp.is_zero(&grp.sum(g.darts_at(v).iter().map(|&x| &f.xi[x]))) {
            out.push(FlowViolation::Klv { vertex: v });
        }
    }
    let Ok(tree) = bfs_spanning_tree(g) else {
        out.push(FlowViolation::Disconnected);
        return out;
    };
    for w in fundamental_cycles(g, &tree).expect("BFS tree is a spanning tree") {
        if !grp.is_zero(&grp.sum(w.darts().iter().map(|&x| &f.xi[x]))) {
            out.push(FlowViolation::Klc {
                walk: w.darts().to_vec(),
            });
        }
    }
    out
}

/// Laplacian of a graph without loops and semiedges: diagonal valency,
/// off-diagonal minus the edge multiplicity.
pub fn laplacian(g: &DartGraph) -> Result<IntMatrix> {
    if g.has_loops() || g.has_semiedges() {
        return Err(Error::LoopOrSemiedgePresent);
    }
    Ok(crate::dartgraph::ordinary_laplacian(g))
}

/// Integer-valued function on vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub values: Vec<BigInt>,
}

impl Divisor {
    pub fn new(values: Vec<BigInt>) -> Self {
        Divisor { values }
    }

    pub fn degree(&self) -> BigInt {
        self.values.iter().sum()
    }
}

/// `nu_f(x) = f(I(x^-1)) - f(I(x))` for every dart.
pub fn divisor_flow(g: &DartGraph, f: &Divisor) -> Result<Vec<BigInt>> {
    if f.values.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "divisor has {} values for {} vertices",
            f.values.len(),
            g.vertex_count()
        )));
    }
    Ok((0..g.dart_count())
        .map(|x| &f.values[g.head(x)] - &f.values[g.vertex_of(x)])
        .collect())
}

/// Recover `f` with `nu_f = flow` and `f(0) = 0`; `None` if the flow violates
/// the cycle law somewhere.
pub fn divisor_potential(g: &DartGraph, flow: &[BigInt]) -> Option<Divisor> {
    if flow.len() != g.dart_count() || !is_connected(g) {
        return None;
    }
    let mut val: Vec<Option<BigInt>> = vec![None; g.vertex_count()];
    val[0] = Some(BigInt::zero());
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let here = val[v].clone().expect("queued vertices have values");
        for &x in g.darts_at(v) {
            let w = g.head(x);
            let there = &here + &flow[x];
            match &val[w] {
                Some(existing) if *existing != there => return None,
                Some(_) => {}
                None => {
                    val[w] = Some(there);
                    queue.push_back(w);
                }
            }
        }
    }
    Some(Divisor::new(val.into_iter().map(Option::unwrap).collect()))
}

/// `Div_0 / Delta(Div)`, the torsion of the Laplacian cokernel.
pub fn jacobian_via_divisors(g: &DartGraph) -> Result<AbelianGroup> {
    let lap = laplacian(g)?;
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let q = invariant_factors(&lap, g.vertex_count())?;
    assert_eq!(q.free_rank, 1, "connected Laplacian has corank 1");
    AbelianGroup::new(q.torsion)
}
