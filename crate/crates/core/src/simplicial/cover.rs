//! Finite-sheeted covers from edge permutations (monodromy).
//!
//! The permutation on an edge `(u, v)` with `u < v` sends sheet `s` over `u`
//! to sheet `perm[s]` over `v`. A simplex `(v0, ..., vk)` lifted at sheet `s`
//! over `v0` passes through sheet `perm(v0, vj)[s]` over `vj`.

use std::collections::{BTreeMap, HashMap};

use crate::complex::Chain;
use crate::error::{Error, Result};

use super::{bfs_spanning_tree, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationAssignment {
    fiber_size: usize,
    perms: BTreeMap<(usize, usize), Vec<usize>>,
}

fn is_permutation(p: &[usize], d: usize) -> bool {
    if p.len() != d {
        return false;
    }
    let mut seen = vec![false; d];
    p.iter()
        .all(|&x| x < d && !std::mem::replace(&mut seen[x], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `(a ∘ b)[s] = a[b[s]]`
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

impl PermutationAssignment {
    pub fn new(fiber_size: usize, perms: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        if fiber_size == 0 {
            return Err(Error::InvalidAssignment(
                "fiber size must be at least 1".into(),
            ));
        }
        for (&(u, v), p) in &perms {
            if u >= v {
                return Err(Error::InvalidAssignment(format!(
                    "edge ({u}, {v}) is not in increasing order"
                )));
            }
            if !is_permutation(p, fiber_size) {
                return Err(Error::InvalidAssignment(format!(
                    "{p:?} on edge ({u}, {v}) is not a permutation of 0..{fiber_size}"
                )));
            }
        }
        Ok(PermutationAssignment { fiber_size, perms })
    }

    /// Every edge gets the identity.
    pub fn trivial(sc: &SimplicialComplex, fiber_size: usize) -> Result<Self> {
        let id: Vec<usize> = (0..fiber_size).collect();
        Self::new(fiber_size, sc.edges().map(|e| (e, id.clone())).collect())
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    pub fn perms(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.perms
    }

    pub fn perm(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.perms.get(&(u, v)).map(Vec::as_slice)
    }

    /// Checks full coverage of the edges of `sc` and the cocycle condition
    /// `perm(u,w) = perm(v,w) ∘ perm(u,v)` on every 2-simplex.
    pub fn validate(&self, sc: &SimplicialComplex) -> Result<()> {
        for (u, v) in sc.edges() {
            if !self.perms.contains_key(&(u, v)) {
                return Err(Error::InvalidAssignment(format!(
                    "edge {} has no permutation",
                    sc.simplex_id(&[u, v])
                )));
            }
        }
        if let Some(&(u, v)) = self.perms.keys().find(|&&(u, v)| !sc.contains(&[u, v])) {
            return Err(Error::InvalidAssignment(format!(
                "({u}, {v}) is not an edge of the complex"
            )));
        }
        for t in sc.simplices(2) {
            let (u, v, w) = (t[0], t[1], t[2]);
            if self.perms[&(u, w)] != compose(&self.perms[&(v, w)], &self.perms[&(u, v)]) {
                return Err(Error::InconsistentAssignment {
                    simplex: sc.simplex_id(t),
                });
            }
        }
        Ok(())
    }

    /// Loop permutations at vertex 0 after gauge-fixing along the BFS spanning
    /// tree: one per non-tree edge. They generate the monodromy group.
    pub fn monodromy_generators(&self, sc: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
        let tree = bfs_spanning_tree(sc)?;
        let n = sc.vertices().len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &tree {
            adj[u].push(v);
            adj[v].push(u);
        }
        // transport[v]: sheet over vertex 0 -> sheet over v along the tree
        let mut transport: Vec<Option<Vec<usize>>> = vec![None; n];
        transport[0] = Some((0..self.fiber_size).collect());
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if transport[v].is_some() {
                    continue;
                }
                let step = if u < v {
                    self.perms[&(u, v)].clone()
                } else {
                    invert(&self.perms[&(v, u)])
                };
                transport[v] = Some(compose(&step, transport[u].as_ref().unwrap()));
                stack.push(v);
            }
        }
        let transport: Vec<Vec<usize>> = transport.into_iter().map(Option::unwrap).collect();
        Ok(sc
            .edges()
            .filter(|e| !tree.contains(e))
            .map(|(u, v)| {
                compose(
                    &invert(&transport[v]),
                    &compose(&self.perms[&(u, v)], &transport[u]),
                )
            })
            .collect())
    }

    /// True when the monodromy group acts transitively on the fiber.
    pub fn is_transitive(&self, sc: &SimplicialComplex) -> Result<bool> {
        let gens = self.monodromy_generators(sc)?;
        let mut seen = vec![false; self.fiber_size];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(s) = stack.pop() {
            for g in &gens {
                for t in [g[s], invert(g)[s]] {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        Ok(seen.into_iter().all(|x| x))
    }
}

/// A finite cover together with its projection. Cover vertex `v·d + s` is
/// sheet `s` over base vertex `v` and is named `{v}.{s}`.
#[derive(Debug, Clone)]
pub struct Cover {
    pub complex: SimplicialComplex,
    pub fiber_size: usize,
    base_vertex: Vec<usize>,
}

impl Cover {
    pub fn project_vertex(&self, v: usize) -> usize {
        self.base_vertex[v]
    }

    pub fn project_simplex(&self, s: &[usize]) -> Vec<usize> {
        s.iter().map(|&v| self.base_vertex[v]).collect()
    }

    /// The chain map `p_*` on simplicial chains, using the cell ids produced
    /// by `to_chain_complex` on the cover and base.
    pub fn push_forward(&self, base: &SimplicialComplex, c: &Chain) -> Result<Chain> {
        let mut terms = Vec::with_capacity(c.support_len());
        for (id, x) in c.terms() {
            let s = self
                .complex
                .parse_simplex_id(id)
                .filter(|s| s.len() == c.dim() + 1)
                .ok_or_else(|| Error::UnknownCell {
                    dim: c.dim(),
                    cell: id.to_string(),
                })?;
            terms.push((base.simplex_id(&self.project_simplex(&s)), x.clone()));
        }
        Ok(Chain::from_terms(c.dim(), terms))
    }

    /// Number of preimages of each base simplex, keyed by simplex.
    pub fn preimage_counts(&self) -> HashMap<Vec<usize>, usize> {
        let mut counts = HashMap::new();
        for d in 0..=self.complex.top_dim() {
            for s in self.complex.simplices(d) {
                *counts.entry(self.project_simplex(s)).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// Builds the `d`-sheeted cover described by `pa`.
pub fn build_cover(sc: &SimplicialComplex, pa: &PermutationAssignment) -> Result<Cover> {
    pa.validate(sc)?;
    let d = pa.fiber_size();
    let vertices: Vec<String> = sc
        .vertices()
        .iter()
        .flat_map(|v| (0..d).map(move |s| format!("{v}.{s}")))
        .collect();
    let base_vertex: Vec<usize> = (0..sc.vertices().len())
        .flat_map(|v| std::iter::repeat_n(v, d))
        .collect();
    let mut facets = Vec::new();
    for dim in 1..=sc.top_dim() {
        for s in sc.simplices(dim) {
            for sheet in 0..d {
                let mut lifted = vec![s[0] * d + sheet];
                for &vj in &s[1..] {
                    lifted.push(vj * d + pa.perm(s[0], vj).expect("validated")[sheet]);
                }
                facets.push(lifted);
            }
        }
    }
    let complex = SimplicialComplex::from_facets(vertices, &facets)?;
    Ok(Cover {
        complex,
        fiber_size: d,
        base_vertex,
    })
}
