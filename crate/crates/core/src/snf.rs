//! Smith normal form over the integers and the lattice questions it answers:
//! integer solvability of `A·x = c`, kernel bases and invariant factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`,
/// all diagonal entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Integer solution of `A·x = c`, or `None` when `c` is not in the integer
    /// image of `A`.
    pub fn solve(&self, c: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let m = self.d.rows();
        let n = self.d.cols();
        if c.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: c.len(),
            });
        }
        let uc = self.u.mul_vec(c)?;
        let r = self.rank();
        let mut y = vec![BigInt::zero(); n];
        for i in 0..r {
            let (q, rem) = uc[i].div_rem(&self.d[(i, i)]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
        if uc[r..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(self.v.mul_vec(&y)?))
    }

    /// Columns of `V` past the rank: a basis of the integer kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v.cols())
            .map(|j| self.v.column(j))
            .collect()
    }
}

/// Computes the Smith normal form of `a`. Deterministic for fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            if !clear_column(&mut d, &mut u, t) {
                continue;
            }
            if !clear_row(&mut d, &mut v, t) {
                continue;
            }
            // Column and row are clear; enforce divisibility on the rest.
            match first_non_multiple(&d, t) {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d, v }
}

/// Integer solution of `a·x = c`, if one exists.
pub fn solve_integer(a: &IntMatrix, c: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: c.len(),
        });
    }
    smith_normal_form(a).solve(c)
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Eliminates entries below the pivot. Returns false if a smaller remainder
/// was swapped into the pivot and the pass must restart.
fn clear_column(d: &mut IntMatrix, u: &mut IntMatrix, t: usize) -> bool {
    let mut restart = None;
    for i in t + 1..d.rows() {
        if d[(i, t)].is_zero() {
            continue;
        }
        let q = &d[(i, t)] / &d[(t, t)];
        let neg = -q;
        d.add_row_multiple(i, t, &neg);
        u.add_row_multiple(i, t, &neg);
        if !d[(i, t)].is_zero() && restart.is_none_or(|r: usize| d[(i, t)].abs() < d[(r, t)].abs())
        {
            restart = Some(i);
        }
    }
    match restart {
        Some(i) => {
            d.swap_rows(t, i);
            u.swap_rows(t, i);
            false
        }
        None => true,
    }
}

fn clear_row(d: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut restart = None;
    for j in t + 1..d.cols() {
        if d[(t, j)].is_zero() {
            continue;
        }
        let q = &d[(t, j)] / &d[(t, t)];
        let neg = -q;
        d.add_col_multiple(j, t, &neg);
        v.add_col_multiple(j, t, &neg);
        if !d[(t, j)].is_zero() && restart.is_none_or(|r: usize| d[(t, j)].abs() < d[(t, r)].abs())
        {
            restart = Some(j);
        }
    }
    match restart {
        Some(j) => {
            d.swap_cols(t, j);
            v.swap_cols(t, j);
            false
        }
        None => true,
    }
}

fn first_non_multiple(d: &IntMatrix, t: usize) -> Option<usize> {
    let p = &d[(t, t)];
    for i in t + 1..d.rows() {
        for j in t + 1..d.cols() {
            if !d[(i, j)].is_multiple_of(p) {
                return Some(i);
            }
        }
    }
    None
}
