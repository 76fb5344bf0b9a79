use std::collections::HashMap;

use super::VoltageAssignment;
use crate::dartgraph::DartGraph;
use crate::error::{Error, Result};
use crate::symmetry::{FiniteGroup, PermGroup, Permutation, DEFAULT_GROUP_ORDER_CAP};

/// Pairing of connection entries: the k-th occurrence of `x` with the k-th
/// occurrence of `x^-1`; self-inverse entries pair with themselves.
fn pairing(group: &FiniteGroup, conn: &[usize]) -> Result<Vec<usize>> {
    if conn.contains(&0) {
        return Err(Error::IdentityInConnection);
    }
    if let Some(&x) = conn.iter().find(|&&x| x >= group.order()) {
        return Err(Error::InvalidArgument(format!(
            "connection element {x} outside a group of order {}",
            group.order()
        )));
    }
    let mut occurrences: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &x) in conn.iter().enumerate() {
        occurrences.entry(x).or_default().push(i);
    }
    let mut partner = vec![0; conn.len()];
    for (i, &x) in conn.iter().enumerate() {
        let xinv = group.inv(x);
        if xinv == x {
            partner[i] = i;
            continue;
        }
        let own = &occurrences[&x];
        let k = own.iter().position(|&j| j == i).expect("indexed");
        let other = occurrences.get(&xinv).map(Vec::as_slice).unwrap_or(&[]);
        if other.len() != own.len() {
            return Err(Error::NotInverseClosed(format!(
                "element {x} occurs {} times but its inverse {xinv} occurs {} times",
                own.len(),
                other.len()
            )));
        }
        partner[i] = other[k];
    }
    Ok(partner)
}

/// Cayley multigraph on `G x M`: dart `(g, i)` has id `g * |M| + i`, lies at
/// vertex `g`, and is reversed to `(g * m_i, j)` where `j` pairs with `i`.
pub fn cayley_multigraph(group: &FiniteGroup, conn: &[usize]) -> Result<DartGraph> {
    let partner = pairing(group, conn)?;
    let m = conn.len();
    if m == 0 {
        return Err(Error::InvalidArgument("empty connection set".into()));
    }
    let mut lambda = Vec::with_capacity(group.order() * m);
    for g in 0..group.order() {
        for (i, &x) in conn.iter().enumerate() {
            lambda.push(group.mul(g, x) * m + partner[i]);
        }
    }
    let vertices = (0..group.order())
        .map(|g| (g * m..(g + 1) * m).collect())
        .collect();
    DartGraph::new(lambda, vertices)
}

/// One-vertex base whose darts are the connection entries, with voltage
/// `m_i` on dart `i`; involutions become semiedges. Its derived graph equals
/// [`cayley_multigraph`] dart for dart.
pub fn bouquet_voltage(group: &FiniteGroup, conn: &[usize]) -> Result<VoltageAssignment> {
    let partner = pairing(group, conn)?;
    let base = DartGraph::new(partner, vec![(0..conn.len()).collect()])?;
    VoltageAssignment::new(base, group.clone(), conn.to_vec())?.with_tree(vec![])
}

/// Left multiplication `(g, i) -> (h g, i)` on the darts of a Cayley multigraph.
pub fn left_regular_action(group: &FiniteGroup, conn_len: usize) -> Result<PermGroup> {
    let n = group.order();
    let perms: Vec<Permutation> = (0..n)
        .map(|h| {
            let image = (0..n * conn_len)
                .map(|d| group.mul(h, d / conn_len) * conn_len + d % conn_len)
                .collect();
            Permutation::new(image).expect("left multiplication is bijective")
        })
        .collect();
    PermGroup::from_elements(n * conn_len, &perms, DEFAULT_GROUP_ORDER_CAP.max(n))
}

/// Elements of order two, used as a named connection set.
pub fn involution_connection(group: &FiniteGroup) -> Vec<usize> {
    group.involutions()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::derived_graph;
    use crate::dartgraph::is_connected;
    use crate::symmetry::{automorphisms, is_semiregular};

    #[test]
    fn cyclic_gives_cycle() {
        let z5 = FiniteGroup::cyclic(5);
        let g = cayley_multigraph(&z5, &[1, 4]).unwrap();
        assert!(g.is_simple());
        assert_eq!(g.vertex_count(), 5);
        assert!((0..5).all(|v| g.valency(v) == 2));
        assert!(is_connected(&g));
        assert_eq!(automorphisms(&g, 16).unwrap().order(), 10);
    }

    #[test]
    fn s3_transpositions_is_k33() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.involutions();
        let g = cayley_multigraph(&s3, &t).unwrap();
        assert!(g.is_simple());
        // bipartite by parity: transpositions join even and odd permutations
        let parity: Vec<bool> = (0..6).map(|a| s3.element_order(a) == 2).collect();
        for x in 0..g.dart_count() {
            assert_ne!(parity[g.vertex_of(x)], parity[g.head(x)]);
        }
        assert_eq!(g.multiplicity_matrix(), complete_bipartite_pattern(&parity));
    }

    fn complete_bipartite_pattern(parity: &[bool]) -> Vec<Vec<usize>> {
        (0..6)
            .map(|u| (0..6).map(|w| (parity[u] != parity[w]) as usize).collect())
            .collect()
    }

    #[test]
    fn doubled_connection() {
        let z3 = FiniteGroup::cyclic(3);
        let g = cayley_multigraph(&z3, &[1, 1, 2, 2]).unwrap();
        assert!(!g.has_loops() && !g.has_semiedges());
        let cls = g.classify_edges();
        assert_eq!(cls.ordinary.len(), 6);
        assert_eq!(cls.parallel_classes.len(), 3);
        assert!(cls.parallel_classes.iter().all(|c| c.edges.len() == 2));
    }

    #[test]
    fn connection_errors() {
        let z4 = FiniteGroup::cyclic(4);
        assert!(matches!(
            cayley_multigraph(&z4, &[0, 1, 3]),
            Err(Error::IdentityInConnection)
        ));
        assert!(matches!(
            cayley_multigraph(&z4, &[1, 1, 3]),
            Err(Error::NotInverseClosed(_))
        ));
        // involution with multiplicity two pairs with itself
        let g = cayley_multigraph(&z4, &[2, 2]).unwrap();
        assert!(!g.has_semiedges());
        assert!(!is_connected(&g));
    }

    #[test]
    fn bouquet_cover_is_cayley() {
        let q8 = FiniteGroup::quaternion();
        let conn = [1, 5, 2, 6];
        let v = bouquet_voltage(&q8, &conn).unwrap();
        let (total, _) = derived_graph(&v).unwrap();
        assert_eq!(total, cayley_multigraph(&q8, &conn).unwrap());
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.involutions();
        let v = bouquet_voltage(&s3, &t).unwrap();
        assert_eq!(v.base().classify_edges().semiedges.len(), 3);
        assert_eq!(derived_graph(&v).unwrap().0, cayley_multigraph(&s3, &t).unwrap());
    }

    #[test]
    fn left_action_is_semiregular() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.involutions();
        let g = cayley_multigraph(&s3, &t).unwrap();
        let act = left_regular_action(&s3, t.len()).unwrap();
        assert_eq!(act.order(), 6);
        assert!(crate::symmetry::acts_on(&act, &g));
        assert!(is_semiregular(&act, &g));
        assert_eq!(g, cayley_multigraph(&s3, &involution_connection(&s3)).unwrap());
    }
}
