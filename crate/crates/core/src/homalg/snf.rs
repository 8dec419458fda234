//! Smith normal form over the integers.
//!
//! Pivoting always takes the nonzero entry of smallest absolute value in the
//! remaining block (ties broken by row, then column), which keeps the
//! reduction deterministic and slows coefficient growth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        diagonal_of(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

fn diagonal_of(d: &IntegerMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut v = IntegerMatrix::identity(m.cols());
    reduce(&mut d, Some((&mut u, &mut v)));
    SmithForm { u, d, v }
}

/// Nonzero SNF diagonal, without tracking the transforms.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    reduce(&mut d, None);
    diagonal_of(&d)
}

fn min_abs_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let x = a.get(r, c);
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if best.as_ref().is_none_or(|b| mag < b.2) {
                best = Some((r, c, mag));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn reduce(a: &mut IntegerMatrix, mut transforms: Option<(&mut IntegerMatrix, &mut IntegerMatrix)>) {
    let steps = a.rows().min(a.cols());
    for t in 0..steps {
        loop {
            let Some((pr, pc)) = min_abs_pivot(a, t) else {
                return;
            };
            a.swap_rows(t, pr);
            a.swap_cols(t, pc);
            if let Some((u, v)) = transforms.as_mut() {
                u.swap_rows(t, pr);
                v.swap_cols(t, pc);
            }

            let pivot = a.get(t, t).clone();
            let mut leftover = false;
            for r in t + 1..a.rows() {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = -(a.get(r, t).div_floor(&pivot));
                a.add_row_multiple(r, t, &q);
                if let Some((u, _)) = transforms.as_mut() {
                    u.add_row_multiple(r, t, &q);
                }
                leftover |= !a.get(r, t).is_zero();
            }
            for c in t + 1..a.cols() {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = -(a.get(t, c).div_floor(&pivot));
                a.add_col_multiple(c, t, &q);
                if let Some((_, v)) = transforms.as_mut() {
                    v.add_col_multiple(c, t, &q);
                }
                leftover |= !a.get(t, c).is_zero();
            }
            if leftover {
                // a remainder smaller than the pivot is now in row/column t
                continue;
            }

            let offender = (t + 1..a.rows())
                .find(|&r| (t + 1..a.cols()).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, r, &one);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.add_row_multiple(t, r, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = transforms.as_mut() {
                u.negate_row(t);
            }
        }
    }
}
