//! Chain isoperimetric profiles and quasi-equivalence fitting.
//!
//! `Φ(n) = sup { FV(∂b) : ‖∂b‖₁ ≤ n }` is computed by enumerating every
//! boundary of norm at most `n` and filling each one exactly.

mod fit;

pub use fit::{quasi_bounded_fit, quasi_equivalent_fit, verify_witness, FitGrid, QuasiFitWitness};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::filling::{FillBudget, FillStatus, Filler};

/// A natural number or infinity; infinity sorts above every natural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProfileValue {
    Finite(BigUint),
    Infinite,
}

impl ProfileValue {
    pub fn zero() -> Self {
        ProfileValue::Finite(BigUint::zero())
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            ProfileValue::Finite(v) => Some(v),
            ProfileValue::Infinite => None,
        }
    }
}

impl From<u64> for ProfileValue {
    fn from(v: u64) -> Self {
        ProfileValue::Finite(BigUint::from(v))
    }
}

impl Ord for ProfileValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProfileValue::Finite(a), ProfileValue::Finite(b)) => a.cmp(b),
            (ProfileValue::Finite(_), ProfileValue::Infinite) => Ordering::Less,
            (ProfileValue::Infinite, ProfileValue::Finite(_)) => Ordering::Greater,
            (ProfileValue::Infinite, ProfileValue::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ProfileValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProfileValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileValue::Finite(v) => write!(f, "{v}"),
            ProfileValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryStatus {
    Exact,
    LowerBound,
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryStatus::Exact => "Exact",
            EntryStatus::LowerBound => "LowerBound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub value: ProfileValue,
    pub status: EntryStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProfileMeta {
    /// What the table was computed from (complex or presentation name).
    pub source: String,
    /// `chain`, `dehn` or `csv`.
    pub kind: String,
    pub dim: Option<usize>,
    pub budgets: Vec<(String, String)>,
}

/// Sampled profile `n ↦ value` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileTable {
    pub entries: Vec<ProfileEntry>,
    pub meta: ProfileMeta,
}

impl ProfileTable {
    /// All-exact table from plain values, mostly for tests and CSV input.
    pub fn from_values(values: impl IntoIterator<Item = ProfileValue>) -> Self {
        ProfileTable {
            entries: values
                .into_iter()
                .map(|value| ProfileEntry {
                    value,
                    status: EntryStatus::Exact,
                })
                .collect(),
            meta: ProfileMeta::default(),
        }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::from_values(values.iter().map(|&v| ProfileValue::from(v)))
    }

    pub fn n_max(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    pub fn value(&self, n: usize) -> Option<&ProfileValue> {
        self.entries.get(n).map(|e| &e.value)
    }

    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|e| e.status == EntryStatus::Exact)
    }

    /// Finite values as `u64`, for tests and quick comparisons.
    pub fn values_u64(&self) -> Vec<Option<u64>> {
        self.entries
            .iter()
            .map(|e| e.value.finite().and_then(ToPrimitive::to_u64))
            .collect()
    }

    /// Human-readable caveats for every entry that is not exact.
    pub fn caveats(&self) -> Vec<String> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.status == EntryStatus::LowerBound)
            .map(|(n, e)| {
                format!(
                    "n = {n}: value {} is only a lower bound; a search budget was exhausted",
                    e.value
                )
            })
            .collect()
    }
}

/// Candidate `(q-1)`-chains of norm `1..=n_max` supported on the rows hit by
/// `∂_q`, each returned with its norm. For `q ≥ 2` only cycles are produced
/// (a boundary is a cycle). Only one of `c`, `-c` is produced: the one whose
/// first nonzero coefficient is positive.
pub(crate) fn enumerate_candidates(
    cc: &ChainComplex,
    q: usize,
    n_max: usize,
) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let dq = cc.boundary_matrix(q)?;
    let support = dq.row_support();
    let rows_total = cc.cell_count(q - 1);

    // Constraint ∂_{q-1} c = 0, restricted to the support cells.
    let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); support.len()];
    let mut constrained = false;
    if q >= 2 {
        let dlow = cc.boundary_matrix(q - 1)?;
        let mut fits = true;
        for (k, &cell) in support.iter().enumerate() {
            for (r, x) in dlow.column(cell) {
                match x.to_i64() {
                    Some(v) => cols[k].push((*r, v)),
                    None => fits = false,
                }
            }
        }
        constrained = fits;
        if !fits {
            cols.iter_mut().for_each(Vec::clear);
        }
    }

    let order = adjacency_order(&cols);
    let cols: Vec<Vec<(usize, i64)>> = order.iter().map(|&k| cols[k].clone()).collect();
    let nrows = cols.iter().flatten().map(|(r, _)| r + 1).max().unwrap_or(0);
    let mut last_touch = vec![usize::MAX; nrows];
    for (pos, col) in cols.iter().enumerate() {
        for (r, _) in col {
            last_touch[*r] = pos;
        }
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); cols.len()];
    for (r, &p) in last_touch.iter().enumerate() {
        if p != usize::MAX {
            closes[p].push(r);
        }
    }
    // suffix maximum of column L1 norms, for the residual bound
    let mut suffix_weight = vec![0i64; cols.len() + 1];
    for pos in (0..cols.len()).rev() {
        let w: i64 = cols[pos].iter().map(|(_, v)| v.abs()).sum();
        suffix_weight[pos] = suffix_weight[pos + 1].max(w);
    }

    struct Search<'s> {
        cols: &'s [Vec<(usize, i64)>],
        closes: &'s [Vec<usize>],
        suffix_weight: &'s [i64],
        constrained: bool,
        coeffs: Vec<i64>,
        residual: Vec<i64>,
        residual_l1: i64,
        out: Vec<(usize, Vec<i64>)>,
        n_max: usize,
    }

    impl Search<'_> {
        fn apply(&mut self, pos: usize, v: i64) {
            if !self.constrained || v == 0 {
                return;
            }
            for &(r, a) in &self.cols[pos] {
                let old = self.residual[r];
                let new = old + a * v;
                self.residual_l1 += new.abs() - old.abs();
                self.residual[r] = new;
            }
        }

        fn rec(&mut self, pos: usize, used: usize, seen_nonzero: bool) {
            if pos == self.cols.len() {
                if used > 0 {
                    self.out.push((used, self.coeffs.clone()));
                }
                return;
            }
            let left = (self.n_max - used) as i64;
            for m in 0..=left {
                let signs: &[i64] = if m == 0 {
                    &[0]
                } else if seen_nonzero {
                    &[1, -1]
                } else {
                    &[1]
                };
                for &s in signs {
                    let v = s * m;
                    self.apply(pos, v);
                    self.coeffs[pos] = v;
                    let ok = !self.constrained
                        || (self.closes[pos].iter().all(|&r| self.residual[r] == 0)
                            && self.residual_l1 <= (left - m) * self.suffix_weight[pos + 1]);
                    if ok {
                        self.rec(pos + 1, used + m as usize, seen_nonzero || v != 0);
                    }
                    self.coeffs[pos] = 0;
                    self.apply(pos, -v);
                }
            }
        }
    }

    let mut search = Search {
        cols: &cols,
        closes: &closes,
        suffix_weight: &suffix_weight,
        constrained,
        coeffs: vec![0; cols.len()],
        residual: vec![0; nrows],
        residual_l1: 0,
        out: Vec::new(),
        n_max,
    };
    search.rec(0, 0, false);

    Ok(search
        .out
        .into_iter()
        .map(|(norm, coeffs)| {
            let mut v = vec![BigInt::zero(); rows_total];
            for (pos, x) in coeffs.into_iter().enumerate() {
                v[support[order[pos]]] = BigInt::from(x);
            }
            (norm, v)
        })
        .collect())
}

/// Orders cells breadth-first through shared constraint rows so that rows are
/// closed (no later cell touches them) as early as possible.
fn adjacency_order(cols: &[Vec<(usize, i64)>]) -> Vec<usize> {
    let n = cols.len();
    let mut by_row: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (k, col) in cols.iter().enumerate() {
        for (r, _) in col {
            by_row.entry(*r).or_default().push(k);
        }
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            order.push(k);
            for (r, _) in &cols[k] {
                for &k2 in &by_row[r] {
                    if !seen[k2] {
                        seen[k2] = true;
                        queue.push_back(k2);
                    }
                }
            }
        }
    }
    order
}

/// The chain profile of `cc` in dimension `q`, for `n = 0..=n_max`.
pub fn chain_profile(
    cc: &ChainComplex,
    q: usize,
    n_max: usize,
    budget: FillBudget,
) -> Result<ProfileTable> {
    let filler = Filler::new(cc, q)?;
    let candidates = enumerate_candidates(cc, q, n_max)?;
    let admitted: Vec<(usize, Vec<BigInt>)> = candidates
        .into_par_iter()
        .filter(|(_, v)| filler.is_boundary(v))
        .collect();

    let fills: Vec<(usize, FillStatus)> = admitted
        .par_iter()
        .map(|(norm, v)| {
            let c = cc.chain_from_vector(q - 1, v)?;
            Ok((*norm, filler.fill(&c, budget)?.status))
        })
        .collect::<Result<_>>()?;

    // best value and exactness per exact norm
    let mut best = vec![ProfileValue::zero(); n_max + 1];
    let mut exact = vec![true; n_max + 1];
    for (norm, status) in fills {
        let (v, ok) = match status {
            FillStatus::Exact(v) => (ProfileValue::Finite(v), true),
            FillStatus::LowerBound(v) => (ProfileValue::Finite(v), false),
            FillStatus::Infinite => {
                return Err(Error::Precondition(
                    "admitted boundary reported as unfillable".into(),
                ))
            }
        };
        if v > best[norm] {
            best[norm] = v;
        }
        exact[norm] &= ok;
    }

    let mut entries = Vec::with_capacity(n_max + 1);
    let mut running = ProfileValue::zero();
    let mut all_exact = true;
    for n in 0..=n_max {
        if best[n] > running {
            running = best[n].clone();
        }
        all_exact &= exact[n];
        entries.push(ProfileEntry {
            value: running.clone(),
            status: if all_exact {
                EntryStatus::Exact
            } else {
                EntryStatus::LowerBound
            },
        });
    }
    Ok(ProfileTable {
        entries,
        meta: ProfileMeta {
            source: String::new(),
            kind: "chain".into(),
            dim: Some(q),
            budgets: vec![
                ("max_nodes".into(), budget.max_nodes.to_string()),
                ("n_max".into(), n_max.to_string()),
            ],
        },
    })
}
