//! Words in free groups, finite presentations and the presentation 2-complex.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Chain, ChainComplex};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

/// A signed generator `x` or `x⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Cyclic rotation moving the first `k` letters to the end. The result is
    /// freely reduced only if `self` is cyclically reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        free_reduce(v)
    }

    /// Strips matching inverse letters from both ends.
    pub fn cyclically_reduce(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e - s >= 2 && self.0[s] == self.0[e - 1].inv() {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Exponent sum of each generator in `0..generators`.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator] += l.exponent();
        }
        v
    }
}

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_generator_name(g) {
                return Err(Error::InvalidPresentation(format!(
                    "bad generator name `{g}`"
                )));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator `{g}`"
                )));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidPresentation(format!("relator {i} is empty")));
            }
            if free_reduce(r.letters().iter().copied()) != *r {
                return Err(Error::InvalidPresentation(format!(
                    "relator {i} is not freely reduced"
                )));
            }
            if let Some(l) = r.letters().iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {i} uses generator index {} of {}",
                    l.generator,
                    generators.len()
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses whitespace-separated tokens `x`, `x^-1`, `x^k` or `ε`; the
    /// result is freely reduced.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace().filter(|&t| t != EMPTY_WORD) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        Error::InvalidPresentation(format!("bad exponent in `{tok}`"))
                    })?;
                    if e.unsigned_abs() > MAX_EXPONENT {
                        return Err(Error::InvalidPresentation(format!(
                            "exponent in `{tok}` exceeds {MAX_EXPONENT}"
                        )));
                    }
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let l = Letter::new(g, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Ok(free_reduce(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return EMPTY_WORD.to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks that every letter names a generator of this presentation.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w
            .letters()
            .iter()
            .find(|l| l.generator >= self.generators.len())
        {
            Some(l) => Err(Error::UnknownGenerator(format!("#{}", l.generator))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

pub(crate) fn valid_generator_name(g: &str) -> bool {
    !g.is_empty() && g != EMPTY_WORD && !g.contains(|c: char| c.is_whitespace() || c == '^')
}

/// How the empty word is written; reserved, so never a generator name.
pub const EMPTY_WORD: &str = "ε";

/// Largest `|k|` accepted in a token `x^k`.
pub const MAX_EXPONENT: u64 = 4096;

pub const BASEPOINT_CELL: &str = "*";

/// Identifier of the 2-cell attached along relator `i`.
pub fn relator_cell(i: usize) -> String {
    format!("r{i}")
}

/// The presentation 2-complex: one vertex, an edge per generator, a 2-cell per
/// relator. `∂₁ = 0` and `∂₂` records exponent sums.
pub fn presentation_complex(p: &Presentation) -> ChainComplex {
    let g = p.generators().len();
    let columns = p
        .relators()
        .iter()
        .map(|r| {
            r.exponent_sums(g)
                .into_iter()
                .enumerate()
                .filter(|(_, e)| *e != 0)
                .map(|(i, e)| (i, BigInt::from(e)))
                .collect()
        })
        .collect();
    let d2 = SparseMatrix::from_columns(g, columns).expect("rows in range");
    let cells = vec![
        vec![BASEPOINT_CELL.to_string()],
        p.generators().to_vec(),
        (0..p.relators().len()).map(relator_cell).collect(),
    ];
    ChainComplex::new(cells, vec![SparseMatrix::zeros(1, g), d2])
        .expect("presentation complex is valid")
}

/// The 1-chain of exponent sums of `w` in the presentation complex.
pub fn abelianized_chain(p: &Presentation, w: &Word) -> Result<Chain> {
    p.check_word(w)?;
    let sums = w.exponent_sums(p.generators().len());
    Ok(Chain::from_terms(
        1,
        p.generators()
            .iter()
            .zip(sums)
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| (g.clone(), BigInt::from(e))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(g: usize) -> Letter {
        Letter::new(g, false)
    }

    fn xi(g: usize) -> Letter {
        Letter::new(g, true)
    }

    fn z2() -> Presentation {
        Presentation::new(
            vec!["a".into(), "b".into()],
            vec![free_reduce([x(0), x(1), xi(0), xi(1)])],
        )
        .unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(free_reduce([x(0), xi(0)]).is_empty());
        assert_eq!(
            free_reduce([x(0), x(1), xi(1), x(0)]).letters(),
            &[x(0), x(0)]
        );
        let w = free_reduce([x(0), x(1), x(0)]);
        assert_eq!(free_reduce(w.letters().iter().copied()), w);
    }

    #[test]
    fn empty_word_round_trips() {
        let p = z2();
        let e = p.parse_word("a a^-1").unwrap();
        assert_eq!(p.parse_word(&p.format_word(&e)).unwrap(), e);
        assert!(Presentation::new(vec![EMPTY_WORD.into()], vec![]).is_err());
    }

    #[test]
    fn cyclic_reduction_and_rotation() {
        let w = free_reduce([x(1), x(0), x(0), xi(1)]);
        assert_eq!(w.cyclically_reduce().letters(), &[x(0), x(0)]);
        let c = free_reduce([x(0), x(1), xi(0), xi(1)]);
        assert_eq!(c.rotate(1).letters(), &[x(1), xi(0), xi(1), x(0)]);
        assert_eq!(c.rotate(4), c);
    }

    #[test]
    fn presentation_complex_boundaries() {
        let triv = Presentation::new(vec!["x".into()], vec![Word(vec![x(0)])]).unwrap();
        let cc = presentation_complex(&triv);
        assert_eq!(
            cc.boundary_matrix(2).unwrap().to_dense()[(0, 0)],
            BigInt::from(1)
        );

        let cc = presentation_complex(&z2());
        assert!(cc.boundary_matrix(2).unwrap().is_zero());
        assert_eq!(cc.cell_counts(), vec![1, 2, 1]);

        let cube = Presentation::new(vec!["x".into()], vec![Word(vec![x(0); 3])]).unwrap();
        let cc = presentation_complex(&cube);
        assert_eq!(
            cc.boundary_matrix(2).unwrap().to_dense()[(0, 0)],
            BigInt::from(3)
        );
    }

    #[test]
    fn abelianization() {
        let p = z2();
        let w = p.parse_word("a^2 b a^-2 b^-1").unwrap();
        assert_eq!(w.len(), 6);
        assert!(abelianized_chain(&p, &w).unwrap().is_zero());
        assert!(abelianized_chain(&p, &Word::empty()).unwrap().is_zero());
        let triv = Presentation::new(vec!["x".into()], vec![Word(vec![x(0)])]).unwrap();
        let w = triv.parse_word("x^4").unwrap();
        assert_eq!(
            abelianized_chain(&triv, &w).unwrap().coefficient("x"),
            BigInt::from(4)
        );
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(Presentation::new(vec!["a".into(), "a".into()], vec![]).is_err());
        assert!(Presentation::new(vec!["a".into()], vec![Word::empty()]).is_err());
        assert!(Presentation::new(vec!["a".into()], vec![Word(vec![x(0), xi(0)])]).is_err());
        assert!(Presentation::new(vec!["a".into()], vec![Word(vec![x(1)])]).is_err());
        assert!(matches!(
            z2().parse_word("a c"),
            Err(Error::UnknownGenerator(_))
        ));
    }
}
