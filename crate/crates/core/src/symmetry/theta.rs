use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::aut::is_automorphism;
use super::perm::{PermGroup, Permutation};
use crate::dartgraph::DartGraph;
use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form, IntMatrix};
use crate::jacobian::{AbelianGroup, GroupElement, JFlow};

/// Endomorphism of a finite abelian group in invariant-factor coordinates.
/// Column `j` is the image of the `j`-th basis element; row `i` is reduced
/// modulo `d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JacAutomorphism {
    pub group: AbelianGroup,
    pub matrix: IntMatrix,
}

impl JacAutomorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        JacAutomorphism {
            group: group.clone(),
            matrix: IntMatrix::identity(group.rank()),
        }
    }

    fn from_columns(group: &AbelianGroup, cols: Vec<GroupElement>) -> Self {
        let r = group.rank();
        let mut m = IntMatrix::zeros(r, r);
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c.coords.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        JacAutomorphism {
            group: group.clone(),
            matrix: m,
        }
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let r = self.group.rank();
        let coords = (0..r)
            .map(|i| (0..r).map(|j| &self.matrix[(i, j)] * &a.coords[j]).sum())
            .collect();
        self.group.element(coords)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &JacAutomorphism) -> JacAutomorphism {
        let r = self.group.rank();
        let cols = (0..r)
            .map(|j| self.apply(&self.group.element(other.matrix.column(j))))
            .collect();
        JacAutomorphism::from_columns(&self.group, cols)
    }

    pub fn is_identity(&self) -> bool {
        *self == JacAutomorphism::identity(&self.group)
    }
}

/// Precomputed data for representing automorphisms of a graph on its Jacobian.
///
/// `lifts[j]` is an integer combination over `D+` whose flow value is the
/// `j`-th basis element, so `f*(e_j) = sum_x lifts[j][x] * xi(f(x))`.
pub struct ThetaContext<'a> {
    graph: &'a DartGraph,
    flow: &'a JFlow,
    positive: Vec<usize>,
    lifts: Vec<Vec<BigInt>>,
}

impl<'a> ThetaContext<'a> {
    pub fn new(graph: &'a DartGraph, flow: &'a JFlow) -> Result<Self> {
        if flow.xi.len() != graph.dart_count() {
            return Err(Error::DimensionMismatch(format!(
                "flow has {} values for {} darts",
                flow.xi.len(),
                graph.dart_count()
            )));
        }
        let grp = &flow.group;
        let r = grp.rank();
        let positive = graph.positive_darts();
        let m = positive.len();
        // B = [xi(D+) | diag(d)], r x (m + r); U B V = [I | 0] iff the values generate.
        let mut b = IntMatrix::zeros(r, m + r);
        for (c, &x) in positive.iter().enumerate() {
            for i in 0..r {
                b[(i, c)] = flow.xi[x].coords[i].clone();
            }
        }
        for (i, d) in grp.factors().iter().enumerate() {
            b[(i, m + i)] = d.clone();
        }
        let snf = smith_normal_form(&b);
        if snf.diagonal().len() != r || snf.diagonal().iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidArgument("flow values do not generate the group".into()));
        }
        // B * (V[:, :r] * U) = I
        let mut lifts = vec![vec![BigInt::zero(); m]; r];
        for (j, lift) in lifts.iter_mut().enumerate() {
            for (c, slot) in lift.iter_mut().enumerate() {
                *slot = (0..r).map(|k| &snf.v[(c, k)] * &snf.u[(k, j)]).sum();
            }
        }
        Ok(ThetaContext {
            graph,
            flow,
            positive,
            lifts,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.flow.group
    }

    /// `f*`: the automorphism of the Jacobian sending `xi(x)` to `xi(f(x))`.
    pub fn theta(&self, f: &Permutation) -> Result<JacAutomorphism> {
        if !is_automorphism(self.graph, f) {
            return Err(Error::NotAnAutomorphism(format!("{f}")));
        }
        let grp = &self.flow.group;
        let cols: Vec<GroupElement> = self
            .lifts
            .iter()
            .map(|lift| {
                let mut acc = vec![BigInt::zero(); grp.rank()];
                for (c, &x) in self.positive.iter().enumerate() {
                    if lift[c].is_zero() {
                        continue;
                    }
                    for (a, v) in acc.iter_mut().zip(&self.flow.xi[f.apply(x)].coords) {
                        *a += &lift[c] * v;
                    }
                }
                grp.element(acc)
            })
            .collect();
        let aut = JacAutomorphism::from_columns(grp, cols);
        for x in 0..self.graph.dart_count() {
            if aut.apply(&self.flow.xi[x]) != self.flow.xi[f.apply(x)] {
                return Err(Error::NotAnAutomorphism(format!(
                    "{f} does not induce a well-defined map at dart {x}"
                )));
            }
        }
        Ok(aut)
    }

    /// Number of distinct images `|Theta(G)|`.
    pub fn image_order(&self, group: &PermGroup) -> Result<usize> {
        let mut seen = HashSet::new();
        for f in group.elements() {
            seen.insert(self.theta(f)?.matrix);
        }
        Ok(seen.len())
    }
}

pub fn theta(g: &DartGraph, f: &Permutation, flow: &JFlow) -> Result<JacAutomorphism> {
    ThetaContext::new(g, flow)?.theta(f)
}

/// Elements `f` with `xi(f(x)) = xi(x)` for every dart.
pub fn theta_kernel(group: &PermGroup, flow: &JFlow) -> Vec<Permutation> {
    group
        .elements()
        .iter()
        .filter(|f| is_xi_invariant(f, flow))
        .cloned()
        .collect()
}

pub fn is_xi_invariant(f: &Permutation, flow: &JFlow) -> bool {
    (0..flow.xi.len()).all(|x| flow.xi[f.apply(x)] == flow.xi[x])
}
