//! Finite cellular chain complexes and integer chains.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, SparseMatrix};
use crate::snf::smith_normal_form;

/// A finite chain complex: ordered cells per dimension and one sparse boundary
/// matrix `∂_d : C_d → C_{d-1}` for each `d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    cells: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    // boundaries[d - 1] is ∂_d
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Validates and builds a complex. `boundaries[d-1]` must have shape
    /// `|cells[d-1]| × |cells[d]|`, cell identifiers must be unique within a
    /// dimension and `∂_{d-1}·∂_d` must vanish.
    pub fn new(cells: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidComplex("no dimensions".into()));
        }
        if boundaries.len() + 1 != cells.len() {
            return Err(Error::InvalidComplex(format!(
                "{} cell dimensions need {} boundary maps, got {}",
                cells.len(),
                cells.len() - 1,
                boundaries.len()
            )));
        }
        let mut index = Vec::with_capacity(cells.len());
        for (d, list) in cells.iter().enumerate() {
            let mut map = HashMap::with_capacity(list.len());
            for (i, id) in list.iter().enumerate() {
                if map.insert(id.clone(), i).is_some() {
                    return Err(Error::InvalidComplex(format!(
                        "duplicate cell `{id}` in dimension {d}"
                    )));
                }
            }
            index.push(map);
        }
        for (k, b) in boundaries.iter().enumerate() {
            let d = k + 1;
            if b.rows() != cells[d - 1].len() || b.cols() != cells[d].len() {
                return Err(Error::InvalidComplex(format!(
                    "boundary map in dimension {d} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    cells[d - 1].len(),
                    cells[d].len()
                )));
            }
        }
        let cc = ChainComplex {
            cells,
            index,
            boundaries,
        };
        cc.check_boundary_squared()?;
        Ok(cc)
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for d in 2..=self.top_dim() {
            let lower = &self.boundaries[d - 2];
            let upper = &self.boundaries[d - 1];
            for (j, col) in upper.columns().enumerate() {
                let mut v = vec![BigInt::zero(); upper.rows()];
                for (i, x) in col {
                    v[*i] = x.clone();
                }
                if lower.mul_vec(&v).iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidComplex(format!(
                        "boundary of boundary of cell `{}` (dimension {d}) is nonzero",
                        self.cells[d][j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[String] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cell_index(&self, dim: usize, id: &str) -> Option<usize> {
        self.index.get(dim)?.get(id).copied()
    }

    /// `∂_d` for `1 ≤ d ≤ top_dim`.
    pub fn boundary_matrix(&self, d: usize) -> Result<&SparseMatrix> {
        if d == 0 || d > self.top_dim() {
            return Err(Error::DimensionOutOfRange {
                dim: d,
                min: 1,
                max: self.top_dim(),
            });
        }
        Ok(&self.boundaries[d - 1])
    }

    /// `∂_d` as a dense matrix; the zero map for `d = 0` and `d = top_dim + 1`.
    pub fn dense_boundary(&self, d: usize) -> IntMatrix {
        if d == 0 {
            IntMatrix::zeros(0, self.cell_count(0))
        } else if d > self.top_dim() {
            IntMatrix::zeros(self.cell_count(d - 1), 0)
        } else {
            self.boundaries[d - 1].to_dense()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if d % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// Checks that a chain only names cells of this complex.
    pub fn validate_chain(&self, c: &Chain) -> Result<()> {
        if c.dim() > self.top_dim() {
            return Err(Error::DimensionOutOfRange {
                dim: c.dim(),
                min: 0,
                max: self.top_dim(),
            });
        }
        for id in c.coeffs.keys() {
            if self.cell_index(c.dim(), id).is_none() {
                return Err(Error::UnknownCell {
                    dim: c.dim(),
                    cell: id.clone(),
                });
            }
        }
        Ok(())
    }

    /// Coefficient vector of `c` in this complex's cell order.
    pub fn chain_to_vector(&self, c: &Chain) -> Result<Vec<BigInt>> {
        self.validate_chain(c)?;
        let mut v = vec![BigInt::zero(); self.cell_count(c.dim())];
        for (id, x) in &c.coeffs {
            v[self.index[c.dim()][id]] = x.clone();
        }
        Ok(v)
    }

    pub fn chain_from_vector(&self, dim: usize, v: &[BigInt]) -> Result<Chain> {
        let cells = self.cells(dim);
        if v.len() != cells.len() {
            return Err(Error::DimensionMismatch {
                expected: cells.len(),
                found: v.len(),
            });
        }
        Ok(Chain::from_terms(
            dim,
            cells.iter().cloned().zip(v.iter().cloned()),
        ))
    }

    /// The elementary chain `1·cell`.
    pub fn basis_chain(&self, dim: usize, i: usize) -> Chain {
        Chain::from_terms(dim, [(self.cells[dim][i].clone(), BigInt::one())])
    }
}

/// A sparse integer chain in one dimension. Never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    dim: usize,
    coeffs: BTreeMap<String, BigInt>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums repeated cells and drops zeros.
    pub fn from_terms<I, S>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (S, BigInt)>,
        S: Into<String>,
    {
        let mut coeffs: BTreeMap<String, BigInt> = BTreeMap::new();
        for (id, x) in terms {
            *coeffs.entry(id.into()).or_insert_with(BigInt::zero) += x;
        }
        coeffs.retain(|_, x| !x.is_zero());
        Chain { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, cell: &str) -> BigInt {
        self.coeffs.get(cell).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &BigInt)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Word length in the free abelian group on the cells: `Σ |coefficient|`.
    pub fn l1_norm(&self) -> BigUint {
        self.coeffs
            .values()
            .map(|x| x.abs().to_biguint().expect("absolute value is nonnegative"))
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        Chain::from_terms(
            self.dim,
            self.coeffs.iter().map(|(c, x)| (c.clone(), x * k)),
        )
    }
}

pub fn l1_norm(c: &Chain) -> BigUint {
    c.l1_norm()
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}]{{", self.dim)?;
        for (i, (c, x)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}: {x}")?;
        }
        write!(f, "}}")
    }
}

impl Add for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        assert_eq!(self.dim, rhs.dim, "adding chains of different dimension");
        Chain::from_terms(
            self.dim,
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(c, x)| (c.clone(), x.clone())),
        )
    }
}

impl Sub for &Chain {
    type Output = Chain;

    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

impl Neg for &Chain {
    type Output = Chain;

    fn neg(self) -> Chain {
        Chain {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(c, x)| (c.clone(), -x)).collect(),
        }
    }
}

/// `∂c` as a chain one dimension down.
pub fn boundary(cc: &ChainComplex, c: &Chain) -> Result<Chain> {
    if c.dim() == 0 || c.dim() > cc.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim: c.dim(),
            min: 1,
            max: cc.top_dim(),
        });
    }
    let v = cc.chain_to_vector(c)?;
    let out = cc.boundaries[c.dim() - 1].mul_vec(&v);
    cc.chain_from_vector(c.dim() - 1, &out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Rank and torsion coefficients of `H_d`.
pub fn homology_summary(cc: &ChainComplex, d: usize) -> Result<HomologySummary> {
    if d > cc.top_dim() {
        return Err(Error::DimensionOutOfRange {
            dim: d,
            min: 0,
            max: cc.top_dim(),
        });
    }
    let rank_out = smith_normal_form(&cc.dense_boundary(d)).rank();
    let incoming = smith_normal_form(&cc.dense_boundary(d + 1));
    let torsion = incoming
        .invariant_factors()
        .into_iter()
        .filter(|x| !x.is_one())
        .collect();
    Ok(HomologySummary {
        betti: cc.cell_count(d) - rank_out - incoming.rank(),
        torsion,
    })
}

/// Betti numbers in every dimension.
pub fn betti_numbers(cc: &ChainComplex) -> Vec<usize> {
    (0..=cc.top_dim())
        .map(|d| homology_summary(cc, d).expect("dimension in range").betti)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn torus_one_vertex() -> ChainComplex {
        let cells = vec![
            vec!["v".to_string()],
            vec!["a".to_string(), "b".to_string()],
            vec!["f".to_string()],
        ];
        let d1 = SparseMatrix::zeros(1, 2);
        let d2 = SparseMatrix::from_columns(
            2,
            vec![vec![
                (0, 1.into()),
                (1, 1.into()),
                (0, (-1).into()),
                (1, (-1).into()),
            ]],
        )
        .unwrap();
        ChainComplex::new(cells, vec![d1, d2]).unwrap()
    }

    #[test]
    fn torus_face_boundary_cancels() {
        let cc = torus_one_vertex();
        let face = Chain::from_terms(2, [("f", BigInt::one())]);
        assert!(boundary(&cc, &face).unwrap().is_zero());
    }

    #[test]
    fn torus_homology() {
        let cc = torus_one_vertex();
        assert_eq!(betti_numbers(&cc), vec![1, 2, 1]);
        for d in 0..=2 {
            assert!(homology_summary(&cc, d).unwrap().torsion.is_empty());
        }
        assert!(homology_summary(&cc, 3).is_err());
    }

    #[test]
    fn boundary_errors() {
        let cc = torus_one_vertex();
        let v = Chain::from_terms(0, [("v", BigInt::one())]);
        assert!(matches!(
            boundary(&cc, &v),
            Err(Error::DimensionOutOfRange { .. })
        ));
        let bogus = Chain::from_terms(1, [("zz", BigInt::one())]);
        assert!(matches!(
            boundary(&cc, &bogus),
            Err(Error::UnknownCell { .. })
        ));
        assert!(boundary(&cc, &Chain::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn rejects_nonzero_boundary_squared() {
        let cells = vec![
            vec!["p".to_string(), "q".to_string()],
            vec!["e".to_string()],
            vec!["f".to_string()],
        ];
        let d1 =
            SparseMatrix::from_columns(2, vec![vec![(0, (-1).into()), (1, 1.into())]]).unwrap();
        let d2 = SparseMatrix::from_columns(1, vec![vec![(0, 1.into())]]).unwrap();
        let err = ChainComplex::new(cells, vec![d1, d2]).unwrap_err();
        assert!(err.to_string().contains("`f`"));
    }

    #[test]
    fn rejects_duplicate_cells() {
        let cells = vec![vec!["p".to_string(), "p".to_string()]];
        assert!(ChainComplex::new(cells, vec![]).is_err());
    }

    #[test]
    fn l1_norm_examples() {
        let c = Chain::from_terms(1, [("s1", BigInt::from(2)), ("s2", BigInt::from(-3))]);
        assert_eq!(c.l1_norm(), BigUint::from(5u32));
        assert_eq!(Chain::zero(1).l1_norm(), BigUint::zero());
        assert_eq!(
            Chain::from_terms(0, [("x", BigInt::one())]).l1_norm(),
            BigUint::one()
        );
        let z = Chain::from_terms(0, [("x", BigInt::one()), ("x", BigInt::from(-1))]);
        assert!(z.is_zero());
    }

    #[test]
    fn single_point() {
        let cc = ChainComplex::new(vec![vec!["pt".to_string()]], vec![]).unwrap();
        assert_eq!(betti_numbers(&cc), vec![1]);
    }
}
