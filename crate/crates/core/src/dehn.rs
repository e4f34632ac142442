//! Word filling volumes and Dehn functions by bounded uniform-cost search.
//!
//! States are freely reduced words. One move replaces an occurrence of `s` by
//! `t⁻¹` whenever `s·t` is a cyclic rotation of a relator or of its inverse,
//! then freely reduces; every move costs 1. Since all moves cost the same the
//! search is a breadth-first sweep. Words longer than `max_word_len` are never
//! entered, so `Exact` means "least among derivations staying under the cap".

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::filling::Filler;
use crate::group::{
    abelianized_chain, free_reduce, presentation_complex, Letter, Presentation, Word,
};
use crate::profile::{EntryStatus, ProfileEntry, ProfileMeta, ProfileTable, ProfileValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillLimits {
    pub max_word_len: usize,
    /// Largest number of relator applications explored.
    pub max_cost: usize,
    /// Largest number of distinct words visited.
    pub max_states: usize,
}

impl Default for FillLimits {
    fn default() -> Self {
        FillLimits {
            max_word_len: 12,
            max_cost: 16,
            max_states: 500_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordFillStatus {
    Exact(usize),
    /// `FV(w) ≥ N` if `w` is trivial at all.
    LowerBound(usize),
    /// The reachable set was exhausted without reaching `ε`. When the length
    /// cap was never hit this proves `w` nontrivial.
    NotTrivialWithinBudget {
        cap_reached: bool,
    },
}

impl fmt::Display for WordFillStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordFillStatus::Exact(n) => write!(f, "Exact({n})"),
            WordFillStatus::LowerBound(n) => write!(f, "LowerBound({n})"),
            WordFillStatus::NotTrivialWithinBudget { cap_reached } => {
                write!(f, "NotTrivialWithinBudget(cap_reached={cap_reached})")
            }
        }
    }
}

/// One step of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Let `ρ` be relator `relator` (inverted if `inverted`) rotated left by
    /// `rotation`. Replaces `ρ[..split]` found at `position` by `ρ[split..]⁻¹`.
    Relator {
        relator: usize,
        inverted: bool,
        rotation: usize,
        split: usize,
        position: usize,
    },
    /// Deletes the cancelling pair at `position`, `position + 1`.
    Cancel { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVWordResult {
    pub status: WordFillStatus,
    /// Present exactly when the status is `Exact`.
    pub certificate: Option<Vec<Move>>,
    /// Distinct words visited.
    pub states: usize,
}

struct Piece {
    relator: usize,
    inverted: bool,
    rotation: usize,
    letters: Vec<Letter>,
}

fn pieces(p: &Presentation) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        for inverted in [false, true] {
            let base = if inverted { r.inverse() } else { r.clone() };
            for rotation in 0..base.len() {
                let letters = base.rotate(rotation).letters().to_vec();
                if out.iter().all(|q| q.letters != letters) {
                    out.push(Piece {
                        relator: i,
                        inverted,
                        rotation,
                        letters,
                    });
                }
            }
        }
    }
    out
}

fn inverse_of(letters: &[Letter]) -> impl Iterator<Item = Letter> + '_ {
    letters.iter().rev().map(|l| l.inv())
}

fn splice(w: &[Letter], position: usize, removed: usize, inserted: &[Letter]) -> Vec<Letter> {
    w[..position]
        .iter()
        .copied()
        .chain(inverse_of(inserted))
        .chain(w[position + removed..].iter().copied())
        .collect()
}

fn neighbours(w: &[Letter], pieces: &[Piece], mut visit: impl FnMut(Vec<Letter>, Move)) {
    for piece in pieces {
        let rho = &piece.letters;
        for split in 0..=rho.len() {
            let (s, t) = rho.split_at(split);
            if s.len() > w.len() {
                break;
            }
            for position in 0..=w.len() - s.len() {
                if &w[position..position + s.len()] != s {
                    continue;
                }
                let next = free_reduce(splice(w, position, s.len(), t));
                visit(
                    next.letters().to_vec(),
                    Move::Relator {
                        relator: piece.relator,
                        inverted: piece.inverted,
                        rotation: piece.rotation,
                        split,
                        position,
                    },
                );
            }
        }
    }
}

/// Applies a relator move without reducing.
fn apply_relator(p: &Presentation, w: &[Letter], mv: Move) -> Result<Vec<Letter>> {
    let Move::Relator {
        relator,
        inverted,
        rotation,
        split,
        position,
    } = mv
    else {
        unreachable!()
    };
    let bad = |m: &str| Error::Precondition(format!("certificate move {mv:?}: {m}"));
    let r = p
        .relators()
        .get(relator)
        .ok_or_else(|| bad("no such relator"))?;
    if rotation >= r.len().max(1) || split > r.len() {
        return Err(bad("rotation or split out of range"));
    }
    let base = if inverted { r.inverse() } else { r.clone() };
    let rho = base.rotate(rotation);
    let (s, t) = rho.letters().split_at(split);
    if position + s.len() > w.len() || &w[position..position + s.len()] != s {
        return Err(bad("subword does not occur"));
    }
    Ok(splice(w, position, s.len(), t))
}

/// Expands the free reduction of `raw` into explicit cancellations.
fn cancellations(mut raw: Vec<Letter>, out: &mut Vec<Move>) -> Vec<Letter> {
    while let Some(i) = (0..raw.len().saturating_sub(1)).find(|&i| raw[i + 1] == raw[i].inv()) {
        raw.drain(i..i + 2);
        out.push(Move::Cancel { position: i });
    }
    raw
}

/// Replays a certificate from `w`, checking every step and that it ends at
/// `ε`. Returns the number of relator applications.
pub fn replay(p: &Presentation, w: &Word, certificate: &[Move]) -> Result<usize> {
    p.check_word(w)?;
    let mut cur = w.letters().to_vec();
    let mut used = 0;
    for &mv in certificate {
        match mv {
            Move::Relator { .. } => {
                cur = apply_relator(p, &cur, mv)?;
                used += 1;
            }
            Move::Cancel { position } => {
                if position + 1 >= cur.len() || cur[position + 1] != cur[position].inv() {
                    return Err(Error::Precondition(format!(
                        "certificate move {mv:?}: letters do not cancel"
                    )));
                }
                cur.drain(position..position + 2);
            }
        }
    }
    if !cur.is_empty() {
        return Err(Error::Precondition(
            "certificate does not end at the empty word".into(),
        ));
    }
    Ok(used)
}

struct Node {
    word: Vec<Letter>,
    cost: usize,
    parent: Option<(usize, Move)>,
}

fn certificate(p: &Presentation, nodes: &[Node], end: usize) -> Vec<Move> {
    let mut path = Vec::new();
    let mut at = end;
    while let Some((parent, mv)) = nodes[at].parent {
        path.push((parent, mv));
        at = parent;
    }
    path.reverse();
    let mut out = Vec::new();
    for (parent, mv) in path {
        let raw = apply_relator(p, &nodes[parent].word, mv).expect("search produced the move");
        out.push(mv);
        cancellations(raw, &mut out);
    }
    out
}

/// The least number of relator applications turning `w` into `ε`, searched
/// within `limits`.
pub fn filling_volume_word(p: &Presentation, w: &Word, limits: FillLimits) -> Result<FVWordResult> {
    p.check_word(w)?;
    let w = free_reduce(w.letters().iter().copied());
    if w.is_empty() {
        return Ok(FVWordResult {
            status: WordFillStatus::Exact(0),
            certificate: Some(Vec::new()),
            states: 1,
        });
    }
    let pieces = pieces(p);
    let mut nodes = vec![Node {
        word: w.letters().to_vec(),
        cost: 0,
        parent: None,
    }];
    let mut index: HashMap<Vec<Letter>, usize> = HashMap::new();
    index.insert(nodes[0].word.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut cap_reached = false;

    while let Some(at) = queue.pop_front() {
        let cost = nodes[at].cost;
        if cost >= limits.max_cost {
            return Ok(lower_bound(cost + 1, nodes.len()));
        }
        let word = nodes[at].word.clone();
        let mut found = None;
        let mut full = false;
        neighbours(&word, &pieces, |next, mv| {
            if found.is_some() || full {
                return;
            }
            if next.len() > limits.max_word_len.max(w.len()) {
                cap_reached = true;
                return;
            }
            if index.contains_key(&next) {
                return;
            }
            if nodes.len() >= limits.max_states {
                full = true;
                return;
            }
            let id = nodes.len();
            let done = next.is_empty();
            index.insert(next.clone(), id);
            nodes.push(Node {
                word: next,
                cost: cost + 1,
                parent: Some((at, mv)),
            });
            queue.push_back(id);
            if done {
                found = Some(id);
            }
        });
        if let Some(end) = found {
            return Ok(FVWordResult {
                status: WordFillStatus::Exact(cost + 1),
                certificate: Some(certificate(p, &nodes, end)),
                states: nodes.len(),
            });
        }
        if full {
            // every word at distance ≤ cost has been seen and none is ε
            return Ok(lower_bound(cost + 1, nodes.len()));
        }
    }
    Ok(FVWordResult {
        status: WordFillStatus::NotTrivialWithinBudget { cap_reached },
        certificate: None,
        states: nodes.len(),
    })
}

fn lower_bound(n: usize, states: usize) -> FVWordResult {
    FVWordResult {
        status: WordFillStatus::LowerBound(n),
        certificate: None,
        states,
    }
}

/// Every freely reduced word over `generators` letters of length `≤ n`, in
/// shortlex order.
pub fn reduced_words(generators: usize, n: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..generators)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| free_reduce(v.iter().copied())));
        layer = next;
    }
    out
}

enum Contribution {
    Value(usize),
    Undecided,
    None,
}

/// The Dehn function `Φ(n) = max { FV(w) : w trivial, |w| ≤ n }` for
/// `n = 0..=n_max`. Words whose exponent sums are not a boundary in the
/// presentation complex are skipped as provably nontrivial; words the search
/// cannot decide make the entry a lower bound.
pub fn dehn_function(p: &Presentation, n_max: usize, limits: FillLimits) -> Result<ProfileTable> {
    let pc: ChainComplex = presentation_complex(p);
    let filler = Filler::new(&pc, 2)?;
    let words = reduced_words(p.generators().len(), n_max);
    let results: Vec<(usize, Contribution)> = words
        .par_iter()
        .map(|w| {
            let chain = abelianized_chain(p, w)?;
            if !filler.is_boundary(&pc.chain_to_vector(&chain)?) {
                return Ok((w.len(), Contribution::None));
            }
            let r = filling_volume_word(p, w, limits)?;
            let c = match r.status {
                WordFillStatus::Exact(n) => Contribution::Value(n),
                WordFillStatus::NotTrivialWithinBudget { cap_reached: false } => Contribution::None,
                _ => Contribution::Undecided,
            };
            Ok((w.len(), c))
        })
        .collect::<Result<_>>()?;

    let mut best = vec![0usize; n_max + 1];
    let mut exact = vec![true; n_max + 1];
    for (len, c) in results {
        match c {
            Contribution::Value(v) => best[len] = best[len].max(v),
            Contribution::Undecided => exact[len] = false,
            Contribution::None => {}
        }
    }
    let mut entries = Vec::with_capacity(n_max + 1);
    let (mut running, mut all_exact) = (0, true);
    for n in 0..=n_max {
        running = running.max(best[n]);
        all_exact &= exact[n];
        entries.push(ProfileEntry {
            value: ProfileValue::Finite(BigUint::from(running)),
            status: if all_exact {
                EntryStatus::Exact
            } else {
                EntryStatus::LowerBound
            },
        });
    }
    Ok(ProfileTable {
        entries,
        meta: ProfileMeta {
            source: String::new(),
            kind: "dehn".into(),
            dim: None,
            budgets: vec![
                ("n_max".into(), n_max.to_string()),
                ("max_word_len".into(), limits.max_word_len.to_string()),
                ("max_cost".into(), limits.max_cost.to_string()),
                ("max_states".into(), limits.max_states.to_string()),
            ],
        },
    })
}
