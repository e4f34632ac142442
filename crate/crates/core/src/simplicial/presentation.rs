use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{free_reduce, Letter, Presentation};

use super::SimplicialComplex;

/// Spanning tree by breadth-first search from vertex 0, neighbours visited in
/// increasing order. Requires a connected complex.
pub fn bfs_spanning_tree(sc: &SimplicialComplex) -> Result<BTreeSet<(usize, usize)>> {
    let n = sc.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in sc.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                tree.insert((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    if tree.len() + 1 != n {
        return Err(Error::Disconnected {
            components: sc.component_count(),
        });
    }
    Ok(tree)
}

fn check_tree(sc: &SimplicialComplex, tree: &BTreeSet<(usize, usize)>) -> Result<()> {
    let n = sc.vertices().len();
    if tree.len() + 1 != n {
        return Err(Error::InvalidTree(format!(
            "{} edges for {n} vertices",
            tree.len()
        )));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in tree {
        if u >= v || !sc.contains(&[u, v]) {
            return Err(Error::InvalidTree(format!(
                "({u}, {v}) is not an edge of the complex"
            )));
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Err(Error::InvalidTree(format!(
                "edge {} closes a cycle",
                sc.simplex_id(&[u, v])
            )));
        }
        parent[a] = b;
    }
    Ok(())
}

/// Edge-path presentation of the fundamental group: one generator per edge
/// outside the spanning tree (named by its simplex id, oriented from the
/// lower to the higher vertex), one relator per 2-simplex read around its
/// boundary with tree edges deleted. Relators are freely and cyclically
/// reduced; empty ones are dropped.
pub fn edge_path_presentation(
    sc: &SimplicialComplex,
    tree: Option<&BTreeSet<(usize, usize)>>,
) -> Result<Presentation> {
    if !sc.is_connected() {
        return Err(Error::Disconnected {
            components: sc.component_count(),
        });
    }
    let tree = match tree {
        Some(t) => {
            check_tree(sc, t)?;
            t.clone()
        }
        None => bfs_spanning_tree(sc)?,
    };
    let mut generators = Vec::new();
    let mut gen_of = std::collections::HashMap::new();
    for (u, v) in sc.edges() {
        if !tree.contains(&(u, v)) {
            gen_of.insert((u, v), generators.len());
            generators.push(sc.simplex_id(&[u, v]));
        }
    }
    let letter =
        |u: usize, v: usize, inverse: bool| gen_of.get(&(u, v)).map(|&g| Letter::new(g, inverse));
    let mut relators = Vec::new();
    for t in sc.simplices(2) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let loop_letters = [letter(a, b, false), letter(b, c, false), letter(a, c, true)];
        let w = free_reduce(loop_letters.into_iter().flatten()).cyclically_reduce();
        if !w.is_empty() {
            relators.push(w);
        }
    }
    Presentation::new(generators, relators)
}
