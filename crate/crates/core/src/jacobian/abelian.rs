use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{invariant_factors, IntMatrix};

/// Finite abelian group `Z/d_1 + ... + Z/d_r` with `2 <= d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<BigInt>,
}

/// Coordinates with `0 <= coords[i] < d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!("factor {i} is {d}, must be >= 2")));
            }
            if i > 0 && !d.is_multiple_of(&factors[i - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "factor {} does not divide factor {i}",
                    i - 1
                )));
            }
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// Unit vector in coordinate `i`.
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[i] = BigInt::one();
        e
    }

    /// Reduce arbitrary integer coordinates into canonical form.
    pub fn element(&self, coords: Vec<BigInt>) -> GroupElement {
        assert_eq!(coords.len(), self.rank(), "coordinate count");
        GroupElement {
            coords: coords
                .into_iter()
                .zip(&self.factors)
                .map(|(c, d)| c.mod_floor(d))
                .collect(),
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords.len() == self.rank()
            && a
                .coords
                .iter()
                .zip(&self.factors)
                .all(|(c, d)| *c >= BigInt::zero() && c < d)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.element(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        self.element(a.coords.iter().map(|x| x * k).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rank()];
        for a in items {
            for (s, x) in acc.iter_mut().zip(&a.coords) {
                *s += x;
            }
        }
        self.element(acc)
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[GroupElement]) -> BigInt {
        let r = self.rank();
        if r == 0 {
            return BigInt::one();
        }
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        for (i, d) in self.factors.iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = d.clone();
            rows.push(row);
        }
        let m = IntMatrix::from_big_rows(rows, r).expect("rows have rank entries");
        let q = invariant_factors(&m, r).expect("ambient rank matches");
        debug_assert_eq!(q.free_rank, 0);
        self.order() / q.torsion_order()
    }

    pub fn generated_by(&self, gens: &[GroupElement]) -> bool {
        self.subgroup_order(gens) == self.order()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[i64]) -> AbelianGroup {
        AbelianGroup::new(f.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(AbelianGroup::new(vec![BigInt::from(1)]).is_err());
        assert!(AbelianGroup::new(vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert_eq!(grp(&[2, 6]).order(), BigInt::from(12));
    }

    #[test]
    fn arithmetic() {
        let g = grp(&[3, 3]);
        let a = g.element(vec![BigInt::from(2), BigInt::from(-1)]);
        assert_eq!(a.coords, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(g.is_zero(&g.add(&a, &g.neg(&a))));
        assert_eq!(g.scale(&BigInt::from(3), &a), g.zero());
    }

    #[test]
    fn subgroups() {
        let g = grp(&[2, 4]);
        assert_eq!(g.subgroup_order(&[g.basis(1)]), BigInt::from(4));
        let two = g.element(vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(g.subgroup_order(&[two]), BigInt::from(2));
        assert!(g.generated_by(&[g.basis(0), g.basis(1)]));
        assert_eq!(g.subgroup_order(&[]), BigInt::from(1));
    }
}
