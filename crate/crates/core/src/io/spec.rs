//! One-line specs given on the command line.
//!
//! Chains: `a=1;b=-2`, or `d:f=1` for the boundary of a chain one dimension
//! up. Grids: `A=1..8;B=1..8;C=0..8;D=0,1/2,1`; missing keys take the
//! defaults of [`parse_grid_spec`].

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{boundary, Chain, ChainComplex};
use crate::error::{Error, Result};
use crate::profile::FitGrid;

/// Longest integer range accepted in a grid spec.
const MAX_RANGE: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    /// The terms name cells one dimension up and the spec means their boundary.
    pub boundary_of: bool,
    pub terms: Vec<(String, BigInt)>,
}

impl ChainSpec {
    /// The `(q-1)`-chain this spec denotes, for filling by `q`-chains.
    pub fn resolve(&self, cc: &ChainComplex, q: usize) -> Result<Chain> {
        if q == 0 || q > cc.top_dim() {
            return Err(Error::DimensionOutOfRange {
                dim: q,
                min: 1,
                max: cc.top_dim(),
            });
        }
        let dim = if self.boundary_of { q } else { q - 1 };
        let c = Chain::from_terms(dim, self.terms.iter().cloned());
        for (cell, _) in &self.terms {
            if cc.cell_index(dim, cell).is_none() {
                return Err(Error::UnknownCell {
                    dim,
                    cell: cell.clone(),
                });
            }
        }
        if self.boundary_of {
            boundary(cc, &c)
        } else {
            Ok(c)
        }
    }
}

/// Splits on `sep`, yielding trimmed pieces with their 1-based column.
fn pieces(text: &str, base: usize, sep: char) -> impl Iterator<Item = (usize, &str)> {
    let mut col = base;
    text.split(sep).map(move |raw| {
        let lead = raw.len() - raw.trim_start().len();
        let out = (col + lead, raw.trim());
        col += raw.len() + 1;
        out
    })
}

pub fn parse_chain_spec(text: &str) -> Result<ChainSpec> {
    let (boundary_of, body, base) = match text.trim_start().strip_prefix("d:") {
        Some(rest) => (true, rest, text.len() - rest.len() + 1),
        None => (false, text, 1),
    };
    let mut terms = Vec::new();
    for (col, term) in pieces(body, base, ';') {
        if term.is_empty() {
            continue;
        }
        let Some((cell, coef)) = term.split_once('=') else {
            return Err(Error::parse(
                1,
                col,
                format!("expected `cell=coefficient`, found `{term}`"),
            ));
        };
        let cell = cell.trim();
        if cell.is_empty() {
            return Err(Error::parse(1, col, "missing cell name"));
        }
        let x: BigInt = coef.trim().parse().map_err(|_| {
            Error::parse(
                1,
                col + cell.len() + 1,
                format!("bad coefficient `{}`", coef.trim()),
            )
        })?;
        terms.push((cell.to_string(), x));
    }
    Ok(ChainSpec { boundary_of, terms })
}

fn parse_rational(s: &str, col: usize) -> Result<BigRational> {
    let bad = || Error::parse(1, col, format!("bad number `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_values(text: &str, base: usize) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for (col, item) in pieces(text, base, ',') {
        if let Some((lo, hi)) = item.split_once("..") {
            let bound = |s: &str| -> Result<i64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::parse(1, col, format!("bad range bound `{}`", s.trim())))
            };
            let (lo, hi) = (bound(lo)?, bound(hi)?);
            if hi < lo || hi.checked_sub(lo).is_none_or(|w| w > MAX_RANGE) {
                return Err(Error::parse(
                    1,
                    col,
                    format!("range `{item}` is empty or too long"),
                ));
            }
            out.extend((lo..=hi).map(|x| BigRational::from_integer(x.into())));
        } else {
            out.push(parse_rational(item, col)?);
        }
    }
    if out.is_empty() {
        return Err(Error::parse(1, base, "no values"));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parses a grid. Defaults: `A=1..8;B=1..8;C=0..8;D=0..8`. `A` is treated as
/// the interval between its least and greatest listed value.
pub fn parse_grid_spec(text: &str) -> Result<FitGrid> {
    let mut grid = FitGrid::integer_box(8, 8, 8, 8);
    let mut seen = [false; 4];
    for (col, part) in pieces(text, 1, ';') {
        if part.is_empty() {
            continue;
        }
        let Some((key, values)) = part.split_once('=') else {
            return Err(Error::parse(
                1,
                col,
                format!("expected `KEY=values`, found `{part}`"),
            ));
        };
        let slot = match key.trim() {
            "A" => 0,
            "B" => 1,
            "C" => 2,
            "D" => 3,
            other => return Err(Error::parse(1, col, format!("unknown grid key `{other}`"))),
        };
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::parse(
                1,
                col,
                format!("grid key `{}` given twice", key.trim()),
            ));
        }
        let values = parse_values(values, col + key.len() + 1)?;
        match slot {
            0 => {
                grid.a_min = values[0].clone();
                grid.a_max = values[values.len() - 1].clone();
            }
            1 => grid.b_values = values,
            2 => grid.c_values = values,
            _ => grid.d_values = values,
        }
    }
    grid.validate()?;
    Ok(grid)
}

/// Renders a grid in the syntax [`parse_grid_spec`] accepts.
pub(crate) fn format_grid(grid: &FitGrid) -> String {
    let list = |v: &[BigRational]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let a = list(&[grid.a_min.clone(), grid.a_max.clone()]);
    format!(
        "A={a};B={};C={};D={}",
        list(&grid.b_values),
        list(&grid.c_values),
        list(&grid.d_values)
    )
}
