use std::collections::VecDeque;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Finite group given by its Cayley table over `0..n`, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// Associativity is checked exhaustively up to this order.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("table[{i}][{j}] = {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidGroup(format!("column {j} repeats {}", row[j])));
                }
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == 0)
                    .expect("Latin rows contain the identity")
            })
            .collect();
        Ok(FiniteGroup { table, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(table).expect("cyclic table")
    }

    /// Dihedral group of order `2n`: index `k + n*e` is `r^k s^e`.
    pub fn dihedral(n: usize) -> Self {
        let decode = |i: usize| (i % n, i / n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (k1, e1) = decode(a);
                        let (k2, e2) = decode(b);
                        // r^k1 s^e1 r^k2 s^e2 = r^(k1 ± k2) s^(e1+e2)
                        let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 };
                        k % n + n * ((e1 + e2) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("dihedral table")
    }

    /// Quaternion group: indices `0..4` are `1, i, j, k`, `4..8` their negatives.
    pub fn quaternion() -> Self {
        // unit products (sign, unit) for 1,i,j,k
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let table = (0..8)
            .map(|a: usize| {
                (0..8)
                    .map(|b: usize| {
                        let (neg, u) = UNIT[a % 4][b % 4];
                        let sign = neg ^ (a >= 4) ^ (b >= 4);
                        u + if sign { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("quaternion table")
    }

    /// Symmetric group on `n` points; elements in lexicographic image order,
    /// identity first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let perms: Vec<Permutation> = perms
            .into_iter()
            .map(|p| Permutation::new(p).expect("valid"))
            .collect();
        FiniteGroup::from_permutations(&perms).expect("closed")
    }

    /// Cayley table of a closed set of permutations; `perms[0]` must be the identity.
    /// Product `a * b` is the composition `a ∘ b`.
    pub fn from_permutations(perms: &[Permutation]) -> Result<Self> {
        let index: std::collections::HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.image(), i))
            .collect();
        let mut table = Vec::with_capacity(perms.len());
        for a in perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in perms {
                let c = a.compose(b);
                row.push(
                    *index
                        .get(c.image())
                        .ok_or_else(|| Error::InvalidGroup("permutation set not closed".into()))?,
                );
            }
            table.push(row);
        }
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Elements of order 2.
    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&a| self.inverse[a] == a).collect()
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure(gens).len() == self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let z5 = FiniteGroup::cyclic(5);
        assert!(z5.is_abelian());
        assert_eq!(z5.inv(2), 3);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.involutions().len(), 5);
        let q8 = FiniteGroup::quaternion();
        assert!(!q8.is_abelian());
        assert_eq!(q8.involutions(), vec![4]);
        assert_eq!(q8.element_order(1), 4);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.involutions().len(), 3);
        assert!(s3.generates(&s3.involutions()));
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(loop5).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }
}
