//! Graph automorphisms as dart permutations, abstract finite groups, and the
//! action of automorphisms on the Jacobian.

mod aut;
mod group;
mod perm;
mod theta;

pub use aut::{
    automorphisms, extend_vertex_map, is_automorphism, vertex_action, DEFAULT_AUT_VERTEX_CAP,
    MAX_BUNDLE,
};
pub use group::FiniteGroup;
pub use perm::{DartPermutation, PermGroup, Permutation, DEFAULT_GROUP_ORDER_CAP};
pub use theta::{is_xi_invariant, theta, theta_kernel, JacAutomorphism, ThetaContext};

use serde::Serialize;

use crate::dartgraph::{edge_connectivity, DartGraph};
use crate::error::Result;
use crate::jacobian::jacobian;

/// True iff no non-identity element fixes a dart or a vertex.
pub fn is_semiregular(group: &PermGroup, g: &DartGraph) -> bool {
    group.elements().iter().filter(|f| !f.is_identity()).all(|f| {
        (0..g.dart_count()).all(|x| f.apply(x) != x)
            && vertex_action(g, f).fixed_points().is_empty()
    })
}

/// Check that every element of `group` is an automorphism of `g`.
pub fn acts_on(group: &PermGroup, g: &DartGraph) -> bool {
    group.degree() == g.dart_count() && group.generators().iter().all(|f| is_automorphism(g, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub group_order: usize,
    pub simple: bool,
    pub semiregular: bool,
    pub three_edge_connected: bool,
    pub kernel_size: usize,
    pub image_order: usize,
    pub injective: bool,
    /// Hypotheses hold but the action on the Jacobian has a kernel.
    pub violation: bool,
}

/// Kernel and image of the action of `group` on the Jacobian of `g`.
pub fn verify_faithful(g: &DartGraph, group: &PermGroup) -> Result<FaithfulnessReport> {
    let jac = jacobian(g)?;
    let ctx = ThetaContext::new(g, &jac.flow)?;
    let kernel_size = theta_kernel(group, &jac.flow).len();
    let image_order = ctx.image_order(group)?;
    let simple = g.is_simple();
    let semiregular = is_semiregular(group, g);
    let three_edge_connected = matches!(edge_connectivity(g), Ok(k) if k >= 3);
    let injective = kernel_size == 1;
    Ok(FaithfulnessReport {
        group_order: group.order(),
        simple,
        semiregular,
        three_edge_connected,
        kernel_size,
        image_order,
        injective,
        violation: simple && semiregular && three_edge_connected && !injective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub cyclic: bool,
}

pub fn jac_rank_check(g: &DartGraph) -> Result<RankReport> {
    let jac = jacobian(g)?;
    Ok(RankReport {
        rank: jac.group.rank(),
        cyclic: jac.group.is_cyclic(),
    })
}

/// Brute-force count of invertible `n x n` matrices over `Z_q`.
pub fn count_invertible_matrices(n: usize, q: u64) -> u64 {
    let cells = n * n;
    let total = q.pow(cells as u32);
    let mut count = 0;
    let mut entries = vec![0i64; cells];
    for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % q) as i64;
            c /= q;
        }
        let m = crate::intlinalg::IntMatrix::from_rows(
            &entries.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>(),
        );
        let det = m.determinant().expect("square");
        if num_integer::Integer::mod_floor(&det, &num_bigint::BigInt::from(q)) != 0.into() {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dartgraph::families::*;

    fn rotations(g: &DartGraph, n: usize) -> PermGroup {
        let s = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let f = extend_vertex_map(g, &s).unwrap().remove(0);
        PermGroup::generate(g.dart_count(), vec![f], 100).unwrap()
    }

    #[test]
    fn semiregularity() {
        let c4 = cycle(4);
        assert!(is_semiregular(&PermGroup::trivial(8), &c4));
        assert!(is_semiregular(&rotations(&c4, 4), &c4));
        let refl = Permutation::parse_cycles(4, "(1 3)").unwrap();
        let f = extend_vertex_map(&c4, &refl).unwrap().remove(0);
        let grp = PermGroup::generate(8, vec![f], 10).unwrap();
        assert!(!is_semiregular(&grp, &c4));
    }

    #[test]
    fn cycles_are_not_faithful() {
        let g = cycle(6);
        let r = verify_faithful(&g, &rotations(&g, 6)).unwrap();
        assert!(!r.injective);
        assert_eq!(r.kernel_size, 6);
        assert!(!r.violation);
        assert!(!r.three_edge_connected);
    }

    #[test]
    fn petersen_rotation_is_faithful() {
        let g = petersen();
        let s = Permutation::parse_cycles(10, "(0 1 2 3 4)(5 6 7 8 9)").unwrap();
        let f = extend_vertex_map(&g, &s).unwrap().remove(0);
        let grp = PermGroup::generate(g.dart_count(), vec![f], 100).unwrap();
        let r = verify_faithful(&g, &grp).unwrap();
        assert!(r.semiregular && r.three_edge_connected && r.simple);
        assert!(r.injective);
        assert_eq!(r.image_order, 5);
    }

    #[test]
    fn ranks() {
        let c5 = jac_rank_check(&cycle(5)).unwrap();
        assert_eq!(c5, RankReport { rank: 1, cyclic: true });
        let ex = jac_rank_check(&two_triple_bundles()).unwrap();
        assert_eq!(ex.rank, 2);
        assert!(!jac_rank_check(&complete_bipartite(3, 3)).unwrap().cyclic);
    }

    #[test]
    fn gl2_over_z3() {
        assert_eq!(count_invertible_matrices(2, 3), 48);
        assert_eq!(count_invertible_matrices(2, 2), 6);
    }
}
