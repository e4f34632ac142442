use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::group::Presentation;
use crate::matrix::SparseMatrix;
use crate::simplicial::{PermutationAssignment, SimplicialComplex};

pub const COMPLEX_FORMAT: &str = "fillscope-complex/1";
pub const SIMPLICIAL_FORMAT: &str = "fillscope-simplicial/1";
pub const PRESENTATION_FORMAT: &str = "fillscope-presentation/1";
pub const ASSIGNMENT_FORMAT: &str = "fillscope-assignment/1";

/// Integers may be given as JSON numbers or decimal strings.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum Int {
    Text(String),
    Number(i64),
}

impl Int {
    fn value(&self) -> Option<BigInt> {
        match self {
            Int::Text(s) => s.trim().parse().ok(),
            Int::Number(n) => Some(BigInt::from(*n)),
        }
    }
}

type BoundaryTerm = (Int, String);

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    format: String,
    cells: Vec<Vec<String>>,
    #[serde(default)]
    boundary: Vec<Vec<(String, Vec<BoundaryTerm>)>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SimplicialDoc {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<String>>,
    simplices: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    format: String,
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EdgePerm {
    edge: (String, String),
    perm: Vec<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct AssignmentDoc {
    format: String,
    fiber_size: usize,
    edges: Vec<EdgePerm>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

fn read<T: for<'de> Deserialize<'de>>(text: &str, expected: &str) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    match value.get("format").and_then(Value::as_str) {
        Some(tag) if tag == expected => {}
        Some(tag) => {
            return Err(Error::parse(
                1,
                1,
                format!("expected format `{expected}`, found `{tag}`"),
            ))
        }
        None => return Err(Error::parse(1, 1, "missing string field `format`")),
    }
    // deserialize again from the text so that shape errors carry positions
    serde_json::from_str(text).map_err(json_error)
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    let doc: ComplexDoc = read(text, COMPLEX_FORMAT)?;
    if doc.cells.is_empty() {
        return Err(Error::InvalidComplex("`cells` lists no dimensions".into()));
    }
    if doc.boundary.len() > doc.cells.len() {
        return Err(Error::InvalidComplex(format!(
            "`boundary` has {} dimensions but `cells` has {}",
            doc.boundary.len(),
            doc.cells.len()
        )));
    }
    if doc.boundary.first().is_some_and(|b| !b.is_empty()) {
        return Err(Error::InvalidComplex(
            "0-cells cannot have a boundary".into(),
        ));
    }
    let index: Vec<HashMap<&str, usize>> = doc
        .cells
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, c)| (c.as_str(), i))
                .collect()
        })
        .collect();
    let mut maps = Vec::with_capacity(doc.cells.len() - 1);
    for d in 1..doc.cells.len() {
        let mut columns: Vec<Option<Vec<(usize, BigInt)>>> = vec![None; doc.cells[d].len()];
        for (cell, terms) in doc.boundary.get(d).map(Vec::as_slice).unwrap_or_default() {
            let j = *index[d]
                .get(cell.as_str())
                .ok_or_else(|| Error::UnknownCell {
                    dim: d,
                    cell: cell.clone(),
                })?;
            if columns[j].is_some() {
                return Err(Error::InvalidComplex(format!(
                    "boundary of `{cell}` (dimension {d}) given twice"
                )));
            }
            let mut col = Vec::with_capacity(terms.len());
            for (coef, face) in terms {
                let i = *index[d - 1]
                    .get(face.as_str())
                    .ok_or_else(|| Error::UnknownCell {
                        dim: d - 1,
                        cell: face.clone(),
                    })?;
                let x = coef.value().ok_or_else(|| {
                    Error::InvalidComplex(format!(
                        "bad coefficient {coef:?} in boundary of `{cell}`"
                    ))
                })?;
                col.push((i, x));
            }
            columns[j] = Some(col);
        }
        let columns = columns.into_iter().map(Option::unwrap_or_default).collect();
        maps.push(SparseMatrix::from_columns(doc.cells[d - 1].len(), columns)?);
    }
    ChainComplex::new(doc.cells, maps)
}

pub fn emit_complex(cc: &ChainComplex) -> String {
    let cells: Vec<Vec<String>> = (0..=cc.top_dim()).map(|d| cc.cells(d).to_vec()).collect();
    let mut boundary = vec![Vec::new()];
    for d in 1..=cc.top_dim() {
        let m = cc.boundary_matrix(d).expect("dimension in range");
        let faces = cc.cells(d - 1);
        boundary.push(
            cc.cells(d)
                .iter()
                .zip(m.columns())
                .filter(|(_, col)| !col.is_empty())
                .map(|(cell, col)| {
                    let terms = col
                        .iter()
                        .map(|(i, x)| (Int::Text(x.to_string()), faces[*i].clone()))
                        .collect();
                    (cell.clone(), terms)
                })
                .collect(),
        );
    }
    to_pretty(&ComplexDoc {
        format: COMPLEX_FORMAT.into(),
        cells,
        boundary,
    })
}

pub fn parse_simplicial(text: &str) -> Result<SimplicialComplex> {
    let doc: SimplicialDoc = read(text, SIMPLICIAL_FORMAT)?;
    let vertices = match doc.vertices {
        Some(v) => v,
        None => {
            let mut seen = BTreeSet::new();
            let mut order = Vec::new();
            for v in doc.simplices.iter().flatten() {
                if seen.insert(v.as_str()) {
                    order.push(v.clone());
                }
            }
            order
        }
    };
    SimplicialComplex::from_named_facets(vertices, &doc.simplices)
}

/// Emits the vertex list and the maximal simplices.
pub fn emit_simplicial(sc: &SimplicialComplex) -> String {
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for d in (0..=sc.top_dim()).rev() {
        for s in sc.simplices(d) {
            if !facets.iter().any(|f| s.iter().all(|v| f.contains(v))) {
                facets.push(s.to_vec());
            }
        }
    }
    facets.sort();
    let names = sc.vertices();
    to_pretty(&SimplicialDoc {
        format: SIMPLICIAL_FORMAT.into(),
        vertices: Some(names.to_vec()),
        simplices: facets
            .iter()
            .map(|f| f.iter().map(|&v| names[v].clone()).collect())
            .collect(),
    })
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc: PresentationDoc = read(text, PRESENTATION_FORMAT)?;
    let free = Presentation::new(doc.generators.clone(), Vec::new())?;
    let mut relators = Vec::with_capacity(doc.relators.len());
    for (i, r) in doc.relators.iter().enumerate() {
        let w = free
            .parse_word(r)
            .map_err(|e| Error::InvalidPresentation(format!("relator {i} `{r}`: {e}")))?;
        if w.is_empty() {
            return Err(Error::InvalidPresentation(format!(
                "relator {i} `{r}` reduces to the empty word"
            )));
        }
        relators.push(w);
    }
    Presentation::new(doc.generators, relators)
}

pub fn emit_presentation(p: &Presentation) -> String {
    to_pretty(&PresentationDoc {
        format: PRESENTATION_FORMAT.into(),
        generators: p.generators().to_vec(),
        relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
    })
}

/// Reads an edge-permutation assignment over `sc`. An edge listed as `[v, u]`
/// against vertex order is stored with the inverse permutation.
pub fn parse_assignment(text: &str, sc: &SimplicialComplex) -> Result<PermutationAssignment> {
    let doc: AssignmentDoc = read(text, ASSIGNMENT_FORMAT)?;
    let index: HashMap<&str, usize> = sc
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut perms = BTreeMap::new();
    for EdgePerm { edge: (a, b), perm } in doc.edges {
        let look = |v: &str| {
            index.get(v).copied().ok_or_else(|| {
                Error::InvalidAssignment(format!("edge [{a}, {b}] names unknown vertex `{v}`"))
            })
        };
        let (u, v) = (look(&a)?, look(&b)?);
        if !sc.contains(&[u.min(v), u.max(v)]) || u == v {
            return Err(Error::InvalidAssignment(format!(
                "[{a}, {b}] is not an edge"
            )));
        }
        let perm = if u < v {
            perm
        } else {
            if perm.len() != doc.fiber_size || perm.iter().any(|&x| x >= perm.len()) {
                return Err(Error::InvalidAssignment(format!(
                    "{perm:?} on edge [{a}, {b}] is not a permutation of 0..{}",
                    doc.fiber_size
                )));
            }
            let mut inv = vec![0; perm.len()];
            for (i, &x) in perm.iter().enumerate() {
                inv[x] = i;
            }
            inv
        };
        if perms.insert((u.min(v), u.max(v)), perm).is_some() {
            return Err(Error::InvalidAssignment(format!(
                "edge [{a}, {b}] listed twice"
            )));
        }
    }
    let pa = PermutationAssignment::new(doc.fiber_size, perms)?;
    pa.validate(sc)?;
    Ok(pa)
}

pub fn emit_assignment(pa: &PermutationAssignment, sc: &SimplicialComplex) -> String {
    let names = sc.vertices();
    to_pretty(&AssignmentDoc {
        format: ASSIGNMENT_FORMAT.into(),
        fiber_size: pa.fiber_size(),
        edges: pa
            .perms()
            .iter()
            .map(|(&(u, v), p)| EdgePerm {
                edge: (names[u].clone(), names[v].clone()),
                perm: p.clone(),
            })
            .collect(),
    })
}

/// Any of the three standalone document kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Complex(ChainComplex),
    Simplicial(SimplicialComplex),
    Presentation(Presentation),
}

/// Dispatches on the `format` tag.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    match value.get("format").and_then(Value::as_str) {
        Some(COMPLEX_FORMAT) => parse_complex(text).map(Document::Complex),
        Some(SIMPLICIAL_FORMAT) => parse_simplicial(text).map(Document::Simplicial),
        Some(PRESENTATION_FORMAT) => parse_presentation(text).map(Document::Presentation),
        Some(tag) => Err(Error::parse(1, 1, format!("unknown format `{tag}`"))),
        None => Err(Error::parse(1, 1, "missing string field `format`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = r#"{
  "format": "fillscope-complex/1",
  "cells": [["v"], ["a", "b"], ["f"]],
  "boundary": [[], [], [["f", [["1", "a"], ["1", "b"], [-1, "a"], ["-1", "b"]]]]]
}"#;

    #[test]
    fn complex_round_trip() {
        let cc = parse_complex(TORUS).unwrap();
        assert_eq!(cc.cell_counts(), vec![1, 2, 1]);
        assert!(cc.boundary_matrix(2).unwrap().is_zero());
        let again = parse_complex(&emit_complex(&cc)).unwrap();
        assert_eq!(again, cc);
        assert_eq!(emit_complex(&again), emit_complex(&cc));
    }

    #[test]
    fn complex_errors() {
        let missing = TORUS.replace(r#"[-1, "a"]"#, r#"[-1, "c"]"#);
        assert_eq!(
            parse_complex(&missing),
            Err(Error::UnknownCell {
                dim: 1,
                cell: "c".into()
            })
        );
        let syntax = TORUS.replace("\"cells\":", "\"cells\"");
        assert!(matches!(
            parse_complex(&syntax),
            Err(Error::Parse { line: 3, .. })
        ));
        let tag = TORUS.replace("complex/1", "complex/9");
        assert!(matches!(parse_complex(&tag), Err(Error::Parse { .. })));
        let bad_dd = r#"{"format": "fillscope-complex/1", "cells": [["p","q"],["e"],["f"]],
            "boundary": [[], [["e", [["1","p"]]]], [["f", [["1","e"]]]]]}"#;
        let err = parse_complex(bad_dd).unwrap_err();
        assert!(err.is_invariant_violation());
        assert!(err.to_string().contains("`f`"));
    }

    #[test]
    fn simplicial_round_trip() {
        let text =
            r#"{"format": "fillscope-simplicial/1", "simplices": [["a","b","c"], ["c","d"]]}"#;
        let sc = parse_simplicial(text).unwrap();
        assert_eq!(sc.counts(), vec![4, 4, 1]);
        let emitted = emit_simplicial(&sc);
        assert_eq!(parse_simplicial(&emitted).unwrap(), sc);
        assert!(emitted.contains("\"c\",\n      \"d\""));
    }

    #[test]
    fn presentation_round_trip() {
        let text = r#"{"format": "fillscope-presentation/1", "generators": ["a","b"],
                       "relators": ["a b a^-1 b^-1", "a^3"]}"#;
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&emit_presentation(&p)).unwrap(), p);
        let bad = text.replace("a^3", "c");
        assert!(parse_presentation(&bad)
            .unwrap_err()
            .to_string()
            .contains("relator 1"));
        let empty = text.replace("a^3", "a a^-1");
        assert!(parse_presentation(&empty).is_err());
    }

    #[test]
    fn assignment_orientation() {
        let sc = parse_simplicial(
            r#"{"format": "fillscope-simplicial/1", "simplices": [["0","1"],["1","2"],["0","2"]]}"#,
        )
        .unwrap();
        let text = r#"{"format": "fillscope-assignment/1", "fiber_size": 3,
            "edges": [{"edge": ["1","0"], "perm": [1,2,0]},
                      {"edge": ["1","2"], "perm": [0,1,2]},
                      {"edge": ["0","2"], "perm": [0,1,2]}]}"#;
        let pa = parse_assignment(text, &sc).unwrap();
        assert_eq!(pa.perm(0, 1), Some(&[2, 0, 1][..]));
        assert_eq!(
            parse_assignment(&emit_assignment(&pa, &sc), &sc).unwrap(),
            pa
        );
        let missing = text
            .replace(r#"{"edge": ["0","2"], "perm": [0,1,2]}"#, "")
            .replace("2]},\n", "2]}\n");
        assert!(parse_assignment(&missing, &sc).is_err());
    }

    #[test]
    fn document_dispatch() {
        assert!(matches!(parse_document(TORUS), Ok(Document::Complex(_))));
        assert!(matches!(
            parse_document(r#"{"format": "nope"}"#),
            Err(Error::Parse { .. })
        ));
    }
}
