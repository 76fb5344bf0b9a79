use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Smith normal form `u * a * v = s` with unimodular `u`, `v`.
///
/// `v_inv` is the inverse of `v`, tracked alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Positive diagonal entries `d_1 | d_2 | ... | d_r`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Compute the Smith normal form with transformation matrices.
///
/// Pivoting moves a least-magnitude entry to the diagonal, clears its row and
/// column by Euclidean steps, and adds a row back whenever the pivot fails to
/// divide the remaining block.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // a least-magnitude pivot keeps quotients and fill-in small
            let Some((pr, pc)) = s.min_abs_position(t) else {
                break;
            };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            swap_cols(&mut s, &mut v, &mut v_inv, t, pc);

            let mut clear = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&s[(i, t)], &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clear &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&s[(t, j)], &s[(t, t)]);
                add_col_multiple(&mut s, &mut v, &mut v_inv, j, t, &q);
                clear &= s[(t, j)].is_zero();
            }
            if !clear {
                // a remainder smaller than the pivot is left; pivot again
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_zero() {
            break;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    let out = SnfResult { s, u, v, v_inv };
    let check = out
        .u
        .mul(a)
        .and_then(|ua| ua.mul(&out.v))
        .expect("dimensions agree");
    assert_eq!(check, out.s, "Smith form reconstruction failed");
    out
}

/// Quotient rounded to nearest, so the remainder is at most half the divisor.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    // a = (q + 1) b + (r - b) and |r - b| < |b| / 2 here
    if twice.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
}

/// `col[dst] += k * col[src]`; the inverse update is `row[src] -= k * row[dst]`.
fn add_col_multiple(
    s: &mut IntMatrix,
    v: &mut IntMatrix,
    v_inv: &mut IntMatrix,
    dst: usize,
    src: usize,
    k: &BigInt,
) {
    s.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, &-k);
}

/// Structure of `Z^ambient_rank / rowspace(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientStructure {
    /// Invariant factors greater than one, divisor-chained.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl QuotientStructure {
    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

pub fn invariant_factors(relations: &IntMatrix, ambient_rank: usize) -> Result<QuotientStructure> {
    if relations.cols() != ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "relation matrix has {} columns for ambient rank {ambient_rank}",
            relations.cols()
        )));
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    Ok(QuotientStructure {
        free_rank: ambient_rank - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    })
}
