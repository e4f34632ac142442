//! Chain filling volumes: the least L1 norm of an integer `q`-chain `b` with
//! `∂b = c`, or infinity when no such chain exists.
//!
//! [`fill_volume`] certifies infeasibility with the Smith normal form, then
//! runs best-first branch and bound on the split formulation `b = p - m`,
//! `p, m ≥ 0`, minimising `Σ(p + m)` with exact rational LP relaxations.
//! [`fill_volume_bruteforce`] enumerates chains by norm and shares no code
//! with the branch and bound beyond the feasibility certificate.

mod lp;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::complex::{boundary, Chain, ChainComplex};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, SnfDecomposition};

use lp::{LpOutcome, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillBudget {
    /// Maximum number of LP relaxations solved before giving up.
    pub max_nodes: usize,
}

impl Default for FillBudget {
    fn default() -> Self {
        FillBudget { max_nodes: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FillStatus {
    Exact(BigUint),
    /// No filling of smaller norm exists; the search budget ran out first.
    LowerBound(BigUint),
    /// `c` is not in the integer image of `∂`.
    Infinite,
}

impl fmt::Display for FillStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillStatus::Exact(v) => write!(f, "Exact({v})"),
            FillStatus::LowerBound(v) => write!(f, "LowerBound({v})"),
            FillStatus::Infinite => write!(f, "Infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillResult {
    pub status: FillStatus,
    /// Present exactly when the status is `Exact`.
    pub witness: Option<Chain>,
    /// LP relaxations solved (zero for the brute-force oracle).
    pub nodes: usize,
}

impl FillResult {
    pub fn exact_value(&self) -> Option<&BigUint> {
        match &self.status {
            FillStatus::Exact(v) => Some(v),
            _ => None,
        }
    }
}

fn check_request(cc: &ChainComplex, q: usize, c: &Chain) -> Result<()> {
    if q == 0 || q > cc.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim: q,
            min: 1,
            max: cc.top_dim(),
        });
    }
    if c.dim() + 1 != q {
        return Err(Error::DimensionMismatch {
            expected: q - 1,
            found: c.dim(),
        });
    }
    cc.validate_chain(c)
}

/// Re-checks `∂b = c` and `‖b‖₁ = value` before a result leaves the module.
fn verified(
    cc: &ChainComplex,
    c: &Chain,
    witness: Chain,
    value: BigUint,
    nodes: usize,
) -> Result<FillResult> {
    if boundary(cc, &witness)? != *c || witness.l1_norm() != value {
        return Err(Error::Precondition(format!(
            "internal error: witness {witness:?} does not fill {c:?} with norm {value}"
        )));
    }
    Ok(FillResult {
        status: FillStatus::Exact(value),
        witness: Some(witness),
        nodes,
    })
}

/// Reusable filling context for one complex and dimension: the dense boundary
/// matrix and its Smith normal form are computed once.
pub struct Filler<'a> {
    cc: &'a ChainComplex,
    q: usize,
    matrix: IntMatrix,
    snf: SnfDecomposition,
}

impl<'a> Filler<'a> {
    pub fn new(cc: &'a ChainComplex, q: usize) -> Result<Self> {
        if q == 0 || q > cc.top_dim() {
            return Err(Error::DimensionOutOfRange {
                dim: q,
                min: 1,
                max: cc.top_dim(),
            });
        }
        let matrix = cc.dense_boundary(q);
        let snf = smith_normal_form(&matrix);
        Ok(Filler { cc, q, matrix, snf })
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    /// Rank of the integer kernel of `∂_q`; zero means fillings are unique.
    pub fn kernel_rank(&self) -> usize {
        self.matrix.cols() - self.snf.rank()
    }

    /// Whether the vector (in cell order of dimension `q-1`) is a boundary.
    pub fn is_boundary(&self, c: &[BigInt]) -> bool {
        matches!(self.snf.solve(c), Ok(Some(_)))
    }

    pub fn fill(&self, c: &Chain, budget: FillBudget) -> Result<FillResult> {
        check_request(self.cc, self.q, c)?;
        if c.is_zero() {
            return verified(self.cc, c, Chain::zero(self.q), BigUint::zero(), 0);
        }
        let target = self.cc.chain_to_vector(c)?;
        let Some(start) = self.snf.solve(&target)? else {
            return Ok(FillResult {
                status: FillStatus::Infinite,
                witness: None,
                nodes: 0,
            });
        };
        let (status, best, nodes) = if self.kernel_rank() == 0 {
            // the filling is unique
            let v = norm(&start);
            (FillStatus::Exact(v), Some(start), 0)
        } else {
            branch_and_bound(&self.matrix, &target, start, budget)
        };
        match (status, best) {
            (FillStatus::Exact(v), Some(b)) => {
                let witness = self.cc.chain_from_vector(self.q, &b)?;
                verified(self.cc, c, witness, v, nodes)
            }
            (status, _) => Ok(FillResult {
                status,
                witness: None,
                nodes,
            }),
        }
    }
}

/// Exact chain filling volume of `c` (a `(q-1)`-chain) in `cc`.
pub fn fill_volume(
    cc: &ChainComplex,
    q: usize,
    c: &Chain,
    budget: FillBudget,
) -> Result<FillResult> {
    check_request(cc, q, c)?;
    Filler::new(cc, q)?.fill(c, budget)
}

fn norm(v: &[BigInt]) -> BigUint {
    v.iter().map(|x| x.abs().to_biguint().unwrap()).sum()
}

#[derive(Clone)]
struct Node {
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
}

fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Solves the LP relaxation of a node. Variables are interleaved
/// `(p_0, m_0, p_1, m_1, ...)`.
fn relax(a: &IntMatrix, target: &[BigInt], node: &Node) -> Option<(Vec<Q>, Q)> {
    let nvars = 2 * a.cols();
    for j in 0..nvars {
        if let Some(u) = &node.upper[j] {
            if *u < node.lower[j] {
                return None;
            }
        }
    }
    // x = lower + y, y >= 0
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let extra: Vec<usize> = (0..nvars).filter(|&j| node.upper[j].is_some()).collect();
    let width = nvars + extra.len();
    for r in 0..a.rows() {
        let arow = a.row(r);
        if arow.iter().all(Zero::is_zero) {
            continue;
        }
        let mut row = vec![Q::zero(); width];
        let mut shift = target[r].clone();
        for (i, x) in arow.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            row[2 * i] = Q::from_integer(x.clone());
            row[2 * i + 1] = Q::from_integer(-x);
            shift -= x * (&node.lower[2 * i] - &node.lower[2 * i + 1]);
        }
        rows.push(row);
        rhs.push(Q::from_integer(shift));
    }
    for (k, &j) in extra.iter().enumerate() {
        let mut row = vec![Q::zero(); width];
        row[j] = Q::one();
        row[nvars + k] = Q::one();
        rows.push(row);
        rhs.push(Q::from_integer(
            node.upper[j].as_ref().unwrap() - &node.lower[j],
        ));
    }
    let mut cost = vec![Q::one(); nvars];
    cost.resize(width, Q::zero());
    match lp::solve(&rows, &rhs, &cost) {
        LpOutcome::Optimal { x, value } => {
            let base: BigInt = node.lower.iter().sum();
            let x: Vec<Q> = (0..nvars)
                .map(|j| &x[j] + Q::from_integer(node.lower[j].clone()))
                .collect();
            Some((x, value + Q::from_integer(base)))
        }
        LpOutcome::Infeasible => None,
        // costs are nonnegative on a nonnegative orthant
        LpOutcome::Unbounded => unreachable!("LP relaxation cannot be unbounded"),
    }
}

/// Most fractional variable, ties by lowest index.
fn branching_variable(x: &[Q]) -> Option<usize> {
    let half = Q::new(1.into(), 2.into());
    let mut best: Option<(usize, Q)> = None;
    for (j, v) in x.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        let dist = (v.fract() - &half).abs();
        if best.as_ref().is_none_or(|(_, d)| dist < *d) {
            best = Some((j, dist));
        }
    }
    best.map(|(j, _)| j)
}

fn branch_and_bound(
    a: &IntMatrix,
    target: &[BigInt],
    start: Vec<BigInt>,
    budget: FillBudget,
) -> (FillStatus, Option<Vec<BigInt>>, usize) {
    let n = a.cols();
    let mut incumbent_value = norm(&start);
    let mut incumbent = start;

    let root = Node {
        lower: vec![BigInt::zero(); 2 * n],
        upper: vec![None; 2 * n],
    };
    // (bound, sequence) ordering makes the search order deterministic
    let mut heap: BinaryHeap<Reverse<(BigInt, usize)>> = BinaryHeap::new();
    let mut nodes_store: Vec<Option<Node>> = vec![Some(root)];
    heap.push(Reverse((BigInt::zero(), 0)));
    let mut solved = 0usize;

    while let Some(Reverse((bound, id))) = heap.pop() {
        let inc = BigInt::from(incumbent_value.clone());
        if bound >= inc {
            // every remaining node is at least as bad
            heap.clear();
            break;
        }
        if solved >= budget.max_nodes {
            return (
                FillStatus::LowerBound(bound.to_biguint().unwrap()),
                None,
                solved,
            );
        }
        let node = nodes_store[id].take().expect("node visited once");
        solved += 1;
        let Some((x, value)) = relax(a, target, &node) else {
            continue;
        };
        let node_bound = ceil_q(&value);
        if node_bound >= inc {
            continue;
        }
        match branching_variable(&x) {
            None => {
                let b: Vec<BigInt> = (0..n)
                    .map(|i| x[2 * i].to_integer() - x[2 * i + 1].to_integer())
                    .collect();
                let v = norm(&b);
                if v < incumbent_value {
                    incumbent_value = v;
                    incumbent = b;
                }
            }
            Some(j) => {
                let fl = x[j].floor().to_integer();
                let mut down = node.clone();
                down.upper[j] = Some(fl.clone());
                let mut up = node;
                up.lower[j] = fl + 1;
                for child in [down, up] {
                    nodes_store.push(Some(child));
                    heap.push(Reverse((node_bound.clone(), nodes_store.len() - 1)));
                }
            }
        }
    }
    (FillStatus::Exact(incumbent_value), Some(incumbent), solved)
}

/// Independent oracle: enumerate all integer `q`-chains by increasing norm up
/// to `norm_bound` and return the first that fills `c`.
pub fn fill_volume_bruteforce(
    cc: &ChainComplex,
    q: usize,
    c: &Chain,
    norm_bound: usize,
) -> Result<FillResult> {
    check_request(cc, q, c)?;
    let a = cc.dense_boundary(q);
    let target = cc.chain_to_vector(c)?;
    if smith_normal_form(&a).solve(&target)?.is_none() {
        return Ok(FillResult {
            status: FillStatus::Infinite,
            witness: None,
            nodes: 0,
        });
    }
    let n = a.cols();
    for k in 0..=norm_bound {
        let mut found = None;
        for_each_vector_of_norm(n, k, &mut |v| {
            if found.is_none() && a.mul_vec(v).expect("shapes agree") == target {
                found = Some(v.to_vec());
            }
        });
        if let Some(b) = found {
            let witness = cc.chain_from_vector(q, &b)?;
            return verified(cc, c, witness, BigUint::from(k), 0);
        }
    }
    Ok(FillResult {
        status: FillStatus::LowerBound(BigUint::from(norm_bound + 1)),
        witness: None,
        nodes: 0,
    })
}

/// Calls `f` on every vector in `Z^n` with L1 norm exactly `k`, in a fixed
/// order.
pub fn for_each_vector_of_norm(n: usize, k: usize, f: &mut dyn FnMut(&[BigInt])) {
    fn rec(pos: usize, left: usize, v: &mut Vec<BigInt>, f: &mut dyn FnMut(&[BigInt])) {
        if pos == v.len() {
            if left == 0 {
                f(v);
            }
            return;
        }
        if pos + 1 == v.len() {
            // the last coordinate takes whatever norm remains
            if left == 0 {
                v[pos] = BigInt::zero();
                f(v);
            } else {
                for s in [1i64, -1] {
                    v[pos] = BigInt::from(s * left as i64);
                    f(v);
                }
                v[pos] = BigInt::zero();
            }
            return;
        }
        v[pos] = BigInt::zero();
        rec(pos + 1, left, v, f);
        for m in 1..=left {
            for s in [1i64, -1] {
                v[pos] = BigInt::from(s * m as i64);
                rec(pos + 1, left - m, v, f);
            }
        }
        v[pos] = BigInt::zero();
    }
    let mut v = vec![BigInt::zero(); n];
    if n == 0 {
        if k == 0 {
            f(&v);
        }
        return;
    }
    rec(0, k, &mut v, f);
}
