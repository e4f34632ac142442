//! Grid search for quasi-bound witnesses `f(x) ≤ A·g(Bx) + Cx + D`.
//!
//! Functions on ℕ are extended to `[0, ∞)` by `f(x) = f(⌊x⌋)`. Since `g` is
//! weakly increasing, checking the inequality at integer `x` implies it on
//! each interval `[x, x + 1)`, so only integer samples are tested. A negative
//! answer only refutes the grid on the sampled range.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ProfileTable, ProfileValue};
use crate::error::{Error, Result};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitGrid {
    /// `A` is the least feasible value, raised to at least `a_min`.
    pub a_min: Q,
    pub a_max: Q,
    pub b_values: Vec<Q>,
    pub c_values: Vec<Q>,
    pub d_values: Vec<Q>,
}

impl FitGrid {
    /// `A ∈ [1, a_max]`, `B ∈ {1..=b_max}`, `C ∈ {0..=c_max}`, `D ∈ {0..=d_max}`.
    pub fn integer_box(a_max: i64, b_max: i64, c_max: i64, d_max: i64) -> Self {
        let ints = |lo: i64, hi: i64| (lo..=hi).map(|x| Q::from_integer(x.into())).collect();
        FitGrid {
            a_min: Q::one(),
            a_max: Q::from_integer(a_max.into()),
            b_values: ints(1, b_max),
            c_values: ints(0, c_max),
            d_values: ints(0, d_max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.b_values.is_empty() || self.c_values.is_empty() || self.d_values.is_empty() {
            return Err(Error::Precondition("fit grid has an empty axis".into()));
        }
        if !self.a_min.is_positive() || self.a_max < self.a_min {
            return Err(Error::Precondition(
                "A range must be positive and nonempty".into(),
            ));
        }
        if self.b_values.iter().any(|b| !b.is_positive()) {
            return Err(Error::Precondition("B values must be positive".into()));
        }
        if self
            .c_values
            .iter()
            .chain(&self.d_values)
            .any(Signed::is_negative)
        {
            return Err(Error::Precondition(
                "C and D values must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiFitWitness {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
    /// e.g. `f ⪯ g`
    pub direction: String,
    /// Integer sample points where the inequality was checked.
    pub samples: Vec<usize>,
    /// Sample points dropped because `B·x` leaves the domain of `g`.
    pub excluded: Vec<usize>,
}

fn q_of(v: &num_bigint::BigUint) -> Q {
    Q::from_integer(BigInt::from(v.clone()))
}

/// `g(⌊y⌋)` for rational `y ≥ 0`.
fn eval_floor<'t>(g: &'t ProfileTable, y: &Q) -> Option<&'t ProfileValue> {
    let idx: usize = y.floor().to_integer().try_into().ok()?;
    g.value(idx)
}

fn split_samples(f: &ProfileTable, g: &ProfileTable, b: &Q) -> (Vec<usize>, Vec<usize>) {
    let nf = f.n_max().unwrap_or(0);
    let ng = Q::from_integer(g.n_max().unwrap_or(0).into());
    (0..=nf).partition(|&x| b * Q::from_integer(x.into()) <= ng)
}

/// Least `A ≥ a_min` making every sample hold for fixed `(B, C, D)`, or `None`
/// when no positive `A` works.
fn least_a(
    f: &ProfileTable,
    g: &ProfileTable,
    samples: &[usize],
    b: &Q,
    c: &Q,
    d: &Q,
    a_min: &Q,
) -> Option<Q> {
    let mut a = a_min.clone();
    for &x in samples {
        let xq = Q::from_integer(x.into());
        let gv = eval_floor(g, &(b * &xq))?;
        let fv = f.value(x)?;
        let fq = match fv {
            ProfileValue::Infinite => {
                if *gv == ProfileValue::Infinite {
                    continue;
                }
                return None;
            }
            ProfileValue::Finite(v) => q_of(v),
        };
        let excess = fq - c * &xq - d;
        if !excess.is_positive() {
            continue;
        }
        match gv {
            ProfileValue::Infinite => continue,
            ProfileValue::Finite(gq) if gq.is_zero() => return None,
            ProfileValue::Finite(gq) => {
                let need = excess / q_of(gq);
                if need > a {
                    a = need;
                }
            }
        }
    }
    Some(a)
}

/// Checks the inequality by direct substitution at every listed sample.
pub fn verify_witness(f: &ProfileTable, g: &ProfileTable, w: &QuasiFitWitness) -> bool {
    w.samples.iter().all(|&x| {
        let xq = Q::from_integer(x.into());
        let (Some(fv), Some(gv)) = (f.value(x), eval_floor(g, &(&w.b * &xq))) else {
            return false;
        };
        match (fv, gv) {
            (_, ProfileValue::Infinite) => true,
            (ProfileValue::Infinite, ProfileValue::Finite(_)) => false,
            (ProfileValue::Finite(fv), ProfileValue::Finite(gv)) => {
                q_of(fv) <= &w.a * q_of(gv) + &w.c * &xq + &w.d
            }
        }
    })
}

fn check_tables(f: &ProfileTable, g: &ProfileTable) -> Result<()> {
    for (name, t) in [("f", f), ("g", g)] {
        if t.entries.is_empty() {
            return Err(Error::EmptyComparableRange(format!(
                "table {name} is empty"
            )));
        }
        if !t.all_exact() {
            return Err(Error::Precondition(format!(
                "table {name} has non-exact entries"
            )));
        }
    }
    Ok(())
}

/// Searches the grid for a witness of `f ⪯ g`. Among feasible grid points the
/// one with least `(A, C, D)` is chosen, then `B` closest to 1 (smaller first).
pub fn quasi_bounded_fit(
    f: &ProfileTable,
    g: &ProfileTable,
    grid: &FitGrid,
) -> Result<Option<QuasiFitWitness>> {
    check_tables(f, g)?;
    grid.validate()?;
    if f.n_max() != Some(0)
        && grid
            .b_values
            .iter()
            .all(|b| split_samples(f, g, b).0.len() <= 1)
    {
        return Err(Error::EmptyComparableRange(
            "every B pushes all positive samples outside the domain of g".into(),
        ));
    }
    let one = Q::one();
    let mut best: Option<(Q, Q, Q, Q, Q)> = None; // (a, c, d, |b-1|, b)
    for b in &grid.b_values {
        let (samples, _) = split_samples(f, g, b);
        for c in &grid.c_values {
            for d in &grid.d_values {
                let Some(a) = least_a(f, g, &samples, b, c, d, &grid.a_min) else {
                    continue;
                };
                if a > grid.a_max {
                    continue;
                }
                let key = (a, c.clone(), d.clone(), (b - &one).abs(), b.clone());
                if best.as_ref().is_none_or(|k| key < *k) {
                    best = Some(key);
                }
            }
        }
    }
    let Some((a, c, d, _, b)) = best else {
        return Ok(None);
    };
    let (samples, excluded) = split_samples(f, g, &b);
    let w = QuasiFitWitness {
        a,
        b,
        c,
        d,
        direction: "f ⪯ g".into(),
        samples,
        excluded,
    };
    if !verify_witness(f, g, &w) {
        return Err(Error::Precondition(format!(
            "internal error: fitted witness {w:?} fails substitution"
        )));
    }
    Ok(Some(w))
}

/// Witnesses for `f ⪯ g` and `g ⪯ f`, if the grid admits both.
pub fn quasi_equivalent_fit(
    f: &ProfileTable,
    g: &ProfileTable,
    grid: &FitGrid,
) -> Result<Option<(QuasiFitWitness, QuasiFitWitness)>> {
    let Some(fg) = quasi_bounded_fit(f, g, grid)? else {
        return Ok(None);
    };
    let Some(mut gf) = quasi_bounded_fit(g, f, grid)? else {
        return Ok(None);
    };
    gf.direction = "g ⪯ f".into();
    Ok(Some((fg, gf)))
}
