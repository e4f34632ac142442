//! Abstract simplicial complexes, their chain complexes and barycentric
//! subdivision.
//!
//! Vertices carry a global order (their position in the vertex list). Every
//! simplex is stored as a strictly increasing tuple of vertex indices, which
//! fixes its orientation; boundaries use the alternating-sign convention.

mod cover;
mod presentation;

pub use cover::{build_cover, Cover, PermutationAssignment};
pub use presentation::{bfs_spanning_tree, edge_path_presentation};

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    // simplices[d] holds the d-simplices
    simplices: Vec<BTreeSet<Vec<usize>>>,
}

pub(crate) fn valid_vertex_name(v: &str) -> bool {
    !v.is_empty() && !v.contains(|c: char| c.is_whitespace() || ",[];=".contains(c))
}

impl SimplicialComplex {
    /// Builds the smallest face-closed complex containing `facets`. Each facet
    /// is a list of distinct vertex indices in any order.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplicial("no vertices".into()));
        }
        let mut seen = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !valid_vertex_name(v) {
                return Err(Error::InvalidSimplicial(format!("bad vertex name `{v}`")));
            }
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidSimplicial(format!("duplicate vertex `{v}`")));
            }
        }
        let mut simplices: Vec<BTreeSet<Vec<usize>>> =
            vec![(0..vertices.len()).map(|i| vec![i]).collect()];
        for facet in facets {
            let mut s = facet.clone();
            s.sort_unstable();
            if let Some(&bad) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidSimplicial(format!(
                    "simplex {facet:?} uses vertex index {bad} of {}",
                    vertices.len()
                )));
            }
            if s.windows(2).any(|w| w[0] == w[1]) || s.is_empty() {
                return Err(Error::InvalidSimplicial(format!(
                    "simplex {facet:?} has repeated or no vertices"
                )));
            }
            insert_with_faces(&mut simplices, s);
        }
        Ok(SimplicialComplex {
            vertices,
            simplices,
        })
    }

    /// Same as [`from_facets`](Self::from_facets) with simplices given by vertex name.
    pub fn from_named_facets(vertices: Vec<String>, facets: &[Vec<String>]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = Vec::with_capacity(f.len());
            for v in f {
                match index.get(v.as_str()) {
                    Some(&i) => s.push(i),
                    None => {
                        return Err(Error::InvalidSimplicial(format!(
                            "simplex [{}] names unknown vertex `{v}`",
                            f.join(",")
                        )))
                    }
                }
            }
            out.push(s);
        }
        Self::from_facets(vertices, &out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn top_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = &[usize]> {
        self.simplices
            .get(dim)
            .into_iter()
            .flat_map(|s| s.iter().map(Vec::as_slice))
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, BTreeSet::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(BTreeSet::len).collect()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        simplex
            .len()
            .checked_sub(1)
            .and_then(|d| self.simplices.get(d))
            .is_some_and(|s| s.contains(simplex))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Cell identifier `[a,b,c]` of a simplex given by sorted vertex indices.
    pub fn simplex_id(&self, simplex: &[usize]) -> String {
        let names: Vec<&str> = simplex.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("[{}]", names.join(","))
    }

    /// Inverse of [`simplex_id`](Self::simplex_id) for simplices of this complex.
    pub fn parse_simplex_id(&self, id: &str) -> Option<Vec<usize>> {
        let inner = id.strip_prefix('[')?.strip_suffix(']')?;
        let mut s = Vec::new();
        for name in inner.split(',') {
            s.push(self.vertices.iter().position(|v| v == name)?);
        }
        self.contains(&s).then_some(s)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.simplices(1).map(|e| (e[0], e[1]))
    }

    /// Component label per vertex, labels numbered by least vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}

fn insert_with_faces(simplices: &mut Vec<BTreeSet<Vec<usize>>>, s: Vec<usize>) {
    let d = s.len() - 1;
    while simplices.len() <= d {
        simplices.push(BTreeSet::new());
    }
    if simplices[d].contains(&s) {
        return;
    }
    if d > 0 {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            insert_with_faces(simplices, face);
        }
    }
    simplices[d].insert(s);
}

/// The simplicial chain complex: cells are simplices in lexicographic order of
/// their vertex tuples, `∂σ = Σ_i (-1)^i σ̂_i`.
pub fn to_chain_complex(sc: &SimplicialComplex) -> ChainComplex {
    let mut cells = Vec::with_capacity(sc.simplices.len());
    let mut boundaries = Vec::new();
    let mut prev_index: HashMap<&[usize], usize> = HashMap::new();
    for (d, set) in sc.simplices.iter().enumerate() {
        cells.push(set.iter().map(|s| sc.simplex_id(s)).collect::<Vec<_>>());
        if d > 0 {
            let columns = set
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (prev_index[face.as_slice()], BigInt::from(sign))
                        })
                        .collect()
                })
                .collect();
            boundaries.push(
                SparseMatrix::from_columns(sc.simplices[d - 1].len(), columns)
                    .expect("faces are indexed"),
            );
        }
        prev_index = set
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
    }
    ChainComplex::new(cells, boundaries).expect("simplicial boundary squares to zero")
}

/// Barycentric subdivision. The barycenter of `σ` is named `b(v0+v1+...)`;
/// barycenters are ordered by dimension, then by the order of `σ`, so every
/// flag `σ0 ⊂ σ1 ⊂ ...` is an increasing tuple.
pub fn barycentric_subdivide(sc: &SimplicialComplex) -> SimplicialComplex {
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut names = Vec::new();
    for set in &sc.simplices {
        for s in set {
            index.insert(s.as_slice(), names.len());
            let parts: Vec<&str> = s.iter().map(|&v| sc.vertices[v].as_str()).collect();
            names.push(format!("b({})", parts.join("+")));
        }
    }
    let mut facets = Vec::new();
    for set in &sc.simplices {
        for s in set {
            for flag in full_flags(s) {
                facets.push(flag.iter().map(|f| index[f.as_slice()]).collect());
            }
        }
    }
    SimplicialComplex::from_facets(names, &facets).expect("subdivision is well formed")
}

/// All maximal chains of faces ending at `s`, from a vertex up to `s`.
fn full_flags(s: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if s.len() == 1 {
        return vec![vec![s.to_vec()]];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut face = s.to_vec();
        face.remove(i);
        for mut flag in full_flags(&face) {
            flag.push(s.to_vec());
            out.push(flag);
        }
    }
    out
}
