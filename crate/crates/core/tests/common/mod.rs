#![allow(dead_code)]

use fillscope_core::SimplicialComplex;
use proptest::prelude::*;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random complexes on at most 6 vertices generated by up to `max_facets`
/// simplices of dimension at most `max_dim`.
pub fn simplicial(max_dim: usize, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=6).prop_flat_map(move |nv| {
        let facet =
            proptest::sample::subsequence((0..nv).collect::<Vec<_>>(), 1..=(max_dim + 1).min(nv));
        proptest::collection::vec(facet, 1..=max_facets)
            .prop_map(move |facets| SimplicialComplex::from_facets(names(nv), &facets).unwrap())
    })
}

pub fn tetra_boundary() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        names(4),
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .unwrap()
}
