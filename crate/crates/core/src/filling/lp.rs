//! Dense two-phase primal simplex over exact rationals.
//!
//! Solves `min c·x` subject to `A·x = b`, `x ≥ 0`. Entering columns follow
//! Dantzig's rule until the first degenerate pivot, then Bland's rule, which
//! rules out cycling.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) type Q = BigRational;

#[derive(Debug, Clone)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>, // last column is the right-hand side
    basis: Vec<usize>,
    width: usize, // number of variable columns
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, j: usize, objective: &mut [Q]) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width)
            .filter(|&k| !pivot_row[k].is_zero())
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for &k in &nz {
                let t = &f * &pivot_row[k];
                row[k] -= t;
            }
        }
        if !objective[j].is_zero() {
            let f = objective[j].clone();
            for &k in &nz {
                let t = &f * &pivot_row[k];
                objective[k] -= t;
            }
        }
        self.basis[r] = j;
    }

    /// Reduced-cost row for `cost` over the current basis; the last entry is
    /// minus the objective value.
    fn objective_row(&self, cost: &[Q]) -> Vec<Q> {
        let mut z: Vec<Q> = cost.to_vec();
        z.push(Q::zero());
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = &cost[bj];
            if cb.is_zero() {
                continue;
            }
            for k in 0..=self.width {
                if !self.rows[i][k].is_zero() {
                    let t = cb * &self.rows[i][k];
                    z[k] -= t;
                }
            }
        }
        z
    }

    /// Runs simplex iterations over columns `0..allowed`. Returns false when
    /// the problem is unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> (bool, Vec<Q>) {
        let mut z = self.objective_row(cost);
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| z[j].is_negative())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..allowed {
                    if z[j].is_negative() && best.is_none_or(|b| z[j] < z[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(j) = entering else {
                return (true, z);
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return (false, z);
            };
            if ratio.is_zero() {
                bland = true;
            }
            self.pivot(r, j, &mut z);
        }
    }
}

pub(crate) fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width + 1);
        for x in &a[i] {
            row.push(if flip { -x } else { x.clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    // Phase 1: minimise the sum of artificials.
    let mut phase1 = vec![Q::zero(); width];
    for x in &mut phase1[n..] {
        *x = Q::from_integer(1.into());
    }
    let (_, z) = t.optimize(&phase1, width);
    if !z[width].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; rows that cannot pivot are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    let mut dummy = vec![Q::zero(); width + 1];
                    t.pivot(i, j, &mut dummy);
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.resize(width, Q::zero());
    let (bounded, z) = t.optimize(&cost, n);
    if !bounded {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        x,
        value: -z[width].clone(),
    }
}
