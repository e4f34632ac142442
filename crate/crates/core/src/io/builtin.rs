use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::group::{free_reduce, Letter, Presentation};
use crate::matrix::SparseMatrix;
use crate::simplicial::SimplicialComplex;

use super::formats::{emit_complex, emit_presentation, emit_simplicial, Document};

const NAMES: &[&str] = &[
    "cp2",
    "tetra-boundary",
    "torus-1vertex",
    "torus7",
    "circle-k",
    "pres-trivial",
    "pres-free",
    "pres-z2",
];

/// Names accepted by [`builtin`]. `circle-k` stands for `circle-3`, `circle-4`, ...
pub fn builtin_names() -> &'static [&'static str] {
    NAMES
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn cp2() -> ChainComplex {
    // cells in dimensions 0, 2 and 4 only, so every boundary map vanishes
    let cells = vec![
        vec!["e0".to_string()],
        vec![],
        vec!["e2".to_string()],
        vec![],
        vec!["e4".to_string()],
    ];
    let maps = (1..cells.len())
        .map(|d| SparseMatrix::zeros(cells[d - 1].len(), cells[d].len()))
        .collect();
    ChainComplex::new(cells, maps).expect("valid")
}

fn torus_one_vertex() -> ChainComplex {
    let cells = vec![
        vec!["v".to_string()],
        vec!["a".to_string(), "b".to_string()],
        vec!["f".to_string()],
    ];
    // ∂f = a + b - a - b
    ChainComplex::new(
        cells,
        vec![SparseMatrix::zeros(1, 2), SparseMatrix::zeros(2, 1)],
    )
    .expect("valid")
}

fn tetra_boundary() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        names(4),
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("valid")
}

/// The 7-vertex torus.
fn torus7() -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    SimplicialComplex::from_facets(names(7), &facets).expect("valid")
}

fn circle(k: usize) -> SimplicialComplex {
    let edges: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    SimplicialComplex::from_facets(names(k), &edges).expect("valid")
}

fn presentation(gens: &[&str], relators: &[&[(usize, bool)]]) -> Presentation {
    Presentation::new(
        gens.iter().map(|g| g.to_string()).collect(),
        relators
            .iter()
            .map(|r| free_reduce(r.iter().map(|&(g, inv)| Letter::new(g, inv))))
            .collect(),
    )
    .expect("valid")
}

/// Loads a built-in example by name.
pub fn builtin(name: &str) -> Result<Document> {
    let doc = match name {
        "cp2" => Document::Complex(cp2()),
        "tetra-boundary" => Document::Simplicial(tetra_boundary()),
        "torus-1vertex" => Document::Complex(torus_one_vertex()),
        "torus7" => Document::Simplicial(torus7()),
        "pres-trivial" => Document::Presentation(presentation(&["x"], &[&[(0, false)]])),
        "pres-free" => Document::Presentation(presentation(&["a", "b"], &[])),
        "pres-z2" => Document::Presentation(presentation(
            &["a", "b"],
            &[&[(0, false), (1, false), (0, true), (1, true)]],
        )),
        _ => match name.strip_prefix("circle-").map(str::parse::<usize>) {
            Some(Ok(k)) if (3..=10_000).contains(&k) => Document::Simplicial(circle(k)),
            _ => {
                return Err(Error::Precondition(format!(
                    "unknown built-in `{name}` (known: {})",
                    NAMES.join(", ")
                )))
            }
        },
    };
    Ok(doc)
}

/// The built-in as it would appear in a file.
pub fn builtin_text(name: &str) -> Result<String> {
    Ok(match builtin(name)? {
        Document::Complex(cc) => emit_complex(&cc),
        Document::Simplicial(sc) => emit_simplicial(&sc),
        Document::Presentation(p) => emit_presentation(&p),
    })
}
